"""Multiple-quantum NMR dynamics of collectively coupled spin-1/2 clusters.

The toolkit simulates clusters of N spin-1/2 particles that share a single
motion-averaged dipolar coupling, prepared in a dipolar ordered thermal
state and mixed by the two-quantum Hamiltonian.  It computes normalized
multiple-quantum coherence intensities, the second moment of their order
distribution, the resulting quantum Fisher information lower bound, and
the certified size of entangled spin clusters as functions of time,
temperature, and system size.
"""

from .dense import (
    BJParams,
    BJResult,
    DenseOperator,
    bj_sequence,
    coherences_via_phase,
    collective_operators,
    dense_initial_state,
    dense_simulate,
    phase_readout,
)
from .dynamics import (
    BlockState,
    CoherenceSpectrum,
    ConsistencyError,
    SimulationResult,
    TemperatureParams,
    build_initial_state,
    coherence_spectrum,
    initial_weight,
    propagate,
    simulate_grid,
)
from .metrics import (
    EntanglementReport,
    SweepResult,
    certify_cluster,
    entanglement_bound,
    entanglement_reports,
    second_moment,
    time_average_max_entangled,
)
from .sectors import (
    DEFAULT_CONSTANTS,
    ParityChain,
    PhysicalConstants,
    SpinSector,
    build_chains,
    enumerate_sectors,
    ladder_squared_element,
    sector_multiplicity,
)
from .three_spin import ThreeSpinCurve, j0_analytic, j2_analytic, three_spin_curve

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "PhysicalConstants",
    "DEFAULT_CONSTANTS",
    "SpinSector",
    "ParityChain",
    "enumerate_sectors",
    "ladder_squared_element",
    "build_chains",
    "sector_multiplicity",
    "TemperatureParams",
    "BlockState",
    "CoherenceSpectrum",
    "ConsistencyError",
    "SimulationResult",
    "initial_weight",
    "build_initial_state",
    "propagate",
    "coherence_spectrum",
    "simulate_grid",
    "EntanglementReport",
    "SweepResult",
    "second_moment",
    "entanglement_bound",
    "certify_cluster",
    "entanglement_reports",
    "time_average_max_entangled",
    "ThreeSpinCurve",
    "j0_analytic",
    "j2_analytic",
    "three_spin_curve",
    "DenseOperator",
    "BJParams",
    "BJResult",
    "collective_operators",
    "dense_initial_state",
    "dense_simulate",
    "phase_readout",
    "coherences_via_phase",
    "bj_sequence",
]
