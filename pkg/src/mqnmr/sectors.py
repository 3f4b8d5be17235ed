"""Total-spin sector algebra for N identical spin-1/2 particles.

All pairs in the cluster share a single averaged dipolar coupling, so both
the two-quantum mixing Hamiltonian and the secular dipolar Hamiltonian are
functions of the collective operators I_z and I**2 alone.  The 2**N product
space therefore splits into blocks labelled by the total spin quantum
number S, each appearing with a purely combinatorial multiplicity.  Within
one block the two-quantum Hamiltonian only couples magnetic quantum numbers
M and M +/- 2, which further splits the block into two tridiagonal parity
chains.

Matrices built here are dimensionless: energies are stored in units of the
dipolar coupling D, so evolution depends on time only through the product
D*tau.  Physical constants enter solely through temperature conversion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PhysicalConstants",
    "DEFAULT_CONSTANTS",
    "ParityChain",
    "SpinSector",
    "ladder_squared_element",
    "build_chains",
    "sector_multiplicity",
    "enumerate_sectors",
]


@dataclass(frozen=True)
class PhysicalConstants:
    """Physical parameters of the spin cluster and fundamental constants.

    Parameters
    ----------
    d_coupling : float
        Averaged dipolar coupling constant in rad/s.
    omega0 : float
        Larmor frequency in rad/s.
    hbar, k_boltzmann : float
        CODATA values in SI units.
    """

    d_coupling: float = 2.0 * math.pi * 1.0e4
    omega0: float = 2.0 * math.pi * 500.0e6
    hbar: float = 1.054571817e-34
    k_boltzmann: float = 1.380649e-23

    def __post_init__(self) -> None:
        if self.d_coupling <= 0 or self.omega0 <= 0:
            raise ValueError("coupling and Larmor frequency must be positive")

    @property
    def dipolar_kelvin(self) -> float:
        """Temperature scale hbar*D/k_B of the dipolar reservoir, in K."""
        return self.hbar * self.d_coupling / self.k_boltzmann

    @property
    def zeeman_kelvin(self) -> float:
        """Temperature scale hbar*omega0/k_B of the Zeeman reservoir, in K."""
        return self.hbar * self.omega0 / self.k_boltzmann

    def b_from_temperature(self, t_kelvin: float) -> float:
        """Dimensionless inverse dipolar temperature b = hbar*D/(k_B*T)."""
        if t_kelvin <= 0:
            raise ValueError("temperature must be positive")
        return self.dipolar_kelvin / t_kelvin

    def a_from_temperature(self, t_kelvin: float) -> float:
        """Dimensionless Zeeman exponent a = hbar*omega0/(k_B*T)."""
        if t_kelvin <= 0:
            raise ValueError("temperature must be positive")
        return self.zeeman_kelvin / t_kelvin


DEFAULT_CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class ParityChain:
    """One parity class of magnetic quantum numbers within a sector.

    Attributes
    ----------
    S : float
        Total spin of the parent sector.
    m_values : numpy.ndarray
        Ascending magnetic quantum numbers, stepping by 2.  May be empty
        for the second chain of an S = 0 sector.
    h_mq : numpy.ndarray
        Two-quantum Hamiltonian on the chain in units of D: real symmetric
        tridiagonal with zero diagonal.
    h_dz_diag : numpy.ndarray
        Diagonal of the secular dipolar Hamiltonian in units of D,
        (1/2)*(3*M**2 - S*(S+1)).
    """

    S: float
    m_values: np.ndarray
    h_mq: np.ndarray
    h_dz_diag: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.m_values)


@dataclass(frozen=True)
class SpinSector:
    """One total-spin block of the coupled basis.

    Attributes
    ----------
    S : float
        Total spin quantum number (half-integer when N is odd).
    multiplicity : int
        Number of identical copies of the block, the binomial difference
        C(N, N/2 - S) - C(N, N/2 - S - 1), computed exactly.
    dimension : int
        2*S + 1.
    chains : tuple of ParityChain
        The two parity chains partitioning the M values of the block.
    """

    S: float
    multiplicity: int
    dimension: int
    chains: tuple[ParityChain, ParityChain] = field(repr=False)


def ladder_squared_element(S: float, M: float) -> float:
    """Matrix element <S, M+2| (I+)**2 |S, M> of the squared raising operator.

    Parameters
    ----------
    S : float
        Total spin quantum number.
    M : float
        Magnetic quantum number of the source state; must satisfy
        -S <= M <= S - 2 for a two-quantum transition to exist.

    Returns
    -------
    float
        sqrt[(S(S+1) - M(M+1)) * (S(S+1) - (M+1)(M+2))], nonnegative.
    """
    if M < -S or M > S - 2:
        raise ValueError(f"no two-quantum transition from M={M} in a spin-{S} sector")
    s2 = S * (S + 1)
    return math.sqrt((s2 - M * (M + 1)) * (s2 - (M + 1) * (M + 2)))


def _make_chains(S: float) -> tuple[ParityChain, ParityChain]:
    """Construct both parity chains of a spin-S sector (units of D)."""
    m_all = np.arange(-S, S + 0.5, 1.0)
    chains = []
    for start in (0, 1):
        ms = m_all[start::2]
        d = len(ms)
        h = np.zeros((d, d))
        if d > 1:
            # H_MQ = -(D/4)[(I+)^2 + (I-)^2]: couples only M <-> M+2
            off = np.array([-0.25 * ladder_squared_element(S, m) for m in ms[:-1]])
            idx = np.arange(d - 1)
            h[idx, idx + 1] = off
            h[idx + 1, idx] = off
        h_dz = 0.5 * (3.0 * ms**2 - S * (S + 1))
        chains.append(ParityChain(S=S, m_values=ms, h_mq=h, h_dz_diag=h_dz))
    return chains[0], chains[1]


def build_chains(
    sector: SpinSector, constants: PhysicalConstants | None = None
) -> tuple[ParityChain, ParityChain]:
    """Build the two parity chains of a sector.

    The returned matrices are dimensionless (energies in units of D);
    `constants` is accepted for interface symmetry and reporting but does
    not scale the matrices.
    """
    return _make_chains(sector.S)


def sector_multiplicity(N: int, S: float) -> int:
    """Exact degeneracy of the spin-S block: C(N, N/2-S) - C(N, N/2-S-1)."""
    k = round(N / 2 - S)
    if k < 0 or k > N:
        raise ValueError(f"S={S} is not an admissible total spin for N={N}")
    lower = math.comb(N, k - 1) if k >= 1 else 0
    return math.comb(N, k) - lower


def enumerate_sectors(N: int) -> list[SpinSector]:
    """Enumerate all total-spin sectors of N spin-1/2 particles.

    Parameters
    ----------
    N : int
        Number of spins, N >= 1.

    Returns
    -------
    list of SpinSector
        Sorted by descending S.  Multiplicities satisfy
        sum_S multiplicity * (2S+1) = 2**N exactly.
    """
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise ValueError("spin count must be a positive integer")
    sectors = []
    for j in range(N // 2 + 1):
        S = N / 2.0 - j
        sectors.append(
            SpinSector(
                S=S,
                multiplicity=sector_multiplicity(N, S),
                dimension=round(2 * S + 1),
                chains=_make_chains(S),
            )
        )
    return sectors
