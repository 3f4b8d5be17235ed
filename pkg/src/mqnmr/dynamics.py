"""Dipolar-ordered initial state and two-quantum coherence dynamics.

The initial density matrix is the thermal state of the secular dipolar
reservoir, exp(b * H_dz / D) / Z, with b the dimensionless inverse dipolar
temperature.  It is diagonal in the coupled |S, M> basis with weight
exp[(b/2) * (3*M**2 - S*(S+1))] per state, each sector repeated with its
combinatorial multiplicity.  Evolution under the two-quantum mixing
Hamiltonian happens chain by chain: each parity chain is diagonalized once
and then rotated to any time by pure phase factors.

Normalized coherence intensities J_n(tau) are obtained by binning squared
density-matrix elements by the difference of magnetic quantum numbers and
dividing by the purity Tr{rho_i**2}, which makes the intensities sum to one
at all times.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .sectors import (
    DEFAULT_CONSTANTS,
    ParityChain,
    PhysicalConstants,
    SpinSector,
    enumerate_sectors,
)

__all__ = [
    "ConsistencyError",
    "TemperatureParams",
    "BlockState",
    "CoherenceSpectrum",
    "initial_weight",
    "build_initial_state",
    "propagate",
    "coherence_spectrum",
    "SimulationResult",
    "simulate_grid",
]

SUM_RULE_TOL = 1e-9


class ConsistencyError(RuntimeError):
    """An internal cross-check (sum rule, normalization) failed."""


@dataclass(frozen=True)
class TemperatureParams:
    """Inverse dipolar temperature of the initial state.

    Attributes
    ----------
    b : float
        Dimensionless hbar*D/(k_B*T), >= 0.
    t_kelvin : float or None
        Source temperature when the state was specified in Kelvin.
    mode : str
        'exact' uses the full exponential weight, 'linearized' the
        first-order expansion 1 + (b/2)(3M**2 - S(S+1)).
    """

    b: float
    t_kelvin: float | None = None
    mode: str = "exact"

    def __post_init__(self) -> None:
        if self.b < 0:
            raise ValueError("inverse temperature b must be nonnegative")
        if self.mode not in ("exact", "linearized"):
            raise ValueError(f"unknown initial-state mode {self.mode!r}")
        if self.t_kelvin is not None:
            expected = DEFAULT_CONSTANTS.b_from_temperature(self.t_kelvin)
            if abs(self.b - expected) > 1e-12 * max(expected, 1e-300):
                raise ValueError(
                    "b and t_kelvin disagree: "
                    f"b={self.b!r} but hbar*D/(k_B*T)={expected!r}"
                )

    @classmethod
    def from_temperature(
        cls,
        t_kelvin: float,
        mode: str = "exact",
        constants: PhysicalConstants = DEFAULT_CONSTANTS,
    ) -> "TemperatureParams":
        return cls(b=constants.b_from_temperature(t_kelvin), t_kelvin=t_kelvin, mode=mode)


@dataclass
class BlockState:
    """Density-matrix block of one parity chain, with its eigen-propagator.

    `rho` holds the (generally complex) chain block; at construction it is
    the diagonal of initial weights divided by the partition function.
    `eigvals`/`eigvecs` diagonalize the chain's h_mq (units of D) and are
    computed once, so propagation to any time is a phase rotation.
    """

    chain: ParityChain
    multiplicity: int
    rho: np.ndarray
    eigvals: np.ndarray = field(repr=False)
    eigvecs: np.ndarray = field(repr=False)
    time: float = 0.0


def initial_weight(S: float, M: float, params: TemperatureParams) -> float:
    """Unnormalized thermal weight of the |S, M> state.

    Exact mode returns exp[(b/2)(3M**2 - S(S+1))]; linearized mode returns
    1 + (b/2)(3M**2 - S(S+1)) and warns outside its validity domain.
    """
    if abs(M) > S:
        raise ValueError(f"|M|={abs(M)} exceeds S={S}")
    x = 0.5 * params.b * (3.0 * M * M - S * (S + 1.0))
    if params.mode == "linearized":
        if params.b * S * S > 0.1:
            warnings.warn(
                f"linearized weight outside validity domain (b*S^2={params.b * S * S:.3g})",
                stacklevel=2,
            )
        return 1.0 + x
    return float(np.exp(x))


def _chain_weights(S: float, ms: np.ndarray, params: TemperatureParams, shift: float) -> np.ndarray:
    """Thermal weights for one chain, with a common exponent shift in exact mode."""
    x = 0.5 * params.b * (3.0 * ms * ms - S * (S + 1.0))
    if params.mode == "linearized":
        return 1.0 + x
    return np.exp(x - shift)


def _max_exponent(sectors: list[SpinSector], b: float) -> float:
    """Largest weight exponent over all (S, M); the extremal M = +/-S states."""
    if not sectors:
        return 0.0
    return max(0.5 * b * sec.S * (2.0 * sec.S - 1.0) for sec in sectors)


def _chain_eigensystem(chain: ParityChain) -> tuple[np.ndarray, np.ndarray]:
    d = chain.dim
    if d == 1:
        return np.zeros(1), np.ones((1, 1))
    off = chain.h_mq[np.arange(d - 1), np.arange(1, d)]
    return eigh_tridiagonal(np.zeros(d), off)


def build_initial_state(
    sectors: list[SpinSector], params: TemperatureParams
) -> tuple[list[BlockState], float]:
    """Populate every chain with its thermal diagonal and diagonalize it.

    Weights are computed relative to the largest exponent so that arbitrarily
    low temperatures never overflow; the ratio weight/Z is unaffected.  In
    linearized mode the partition function equals 2**N exactly (the linear
    term is traceless).

    Returns
    -------
    (states, purity)
        All BlockState blocks plus Tr{rho_i**2}, the normalization of the
        coherence intensities.
    """
    if params.mode == "linearized":
        n_spins = round(2 * sectors[0].S) if sectors else 0
        if params.b * (n_spins / 2.0) ** 2 > 0.1:
            warnings.warn(
                "linearized initial state outside validity domain "
                f"(b*(N/2)^2={params.b * (n_spins / 2.0) ** 2:.3g})",
                stacklevel=2,
            )
    shift = _max_exponent(sectors, params.b)
    z = 0.0
    per_chain: list[tuple[SpinSector, ParityChain, np.ndarray]] = []
    for sec in sectors:
        for chain in sec.chains:
            if chain.dim == 0:
                continue
            w = _chain_weights(sec.S, chain.m_values, params, shift)
            per_chain.append((sec, chain, w))
            z += sec.multiplicity * w.sum()
    states = []
    purity = 0.0
    for sec, chain, w in per_chain:
        w = w / z
        purity += sec.multiplicity * np.sum(w * w)
        lam, vec = _chain_eigensystem(chain)
        states.append(
            BlockState(
                chain=chain,
                multiplicity=sec.multiplicity,
                rho=np.diag(w.astype(complex)),
                eigvals=lam,
                eigvecs=vec,
            )
        )
    return states, purity


def propagate(state: BlockState, d_tau: float) -> BlockState:
    """Evolve a block to dimensionless time d_tau from its initial state.

    rho(tau) = U rho U* with U = exp(-i * h_mq/D * d_tau), applied in the
    chain eigenbasis.  The input state is not mutated.
    """
    if d_tau < 0:
        raise ValueError("d_tau must be nonnegative")
    v = state.eigvecs
    phases = np.exp(-1j * state.eigvals * d_tau)
    a = v.T @ state.rho @ v
    rho_t = (v * phases) @ a @ (v * phases.conj()).T
    return replace(state, rho=rho_t, time=d_tau)


@dataclass(frozen=True)
class CoherenceSpectrum:
    """Normalized multiple-quantum intensities at one time point.

    `intensities` maps nonnegative even order n to J_n; negative orders
    mirror the positive ones and odd orders vanish.  `normalization`
    records the purity Tr{rho_i**2} used as the denominator.
    """

    time: float
    intensities: dict[int, float]
    normalization: float

    def intensity(self, n: int) -> float:
        return self.intensities.get(abs(int(n)), 0.0)

    def total(self) -> float:
        """Sum over all orders, negative and positive: should be 1."""
        return sum(v if n == 0 else 2.0 * v for n, v in self.intensities.items())

    def orders(self) -> list[int]:
        return sorted(self.intensities)


def _accumulate_orders(rho: np.ndarray, ms: np.ndarray, mult: int, out: dict[int, float]) -> None:
    """Add |rho_{M,M'}|**2 of one block into per-order bins (n = M - M' >= 0)."""
    absq = np.abs(rho) ** 2
    dm = np.rint(ms[:, None] - ms[None, :]).astype(int)
    for n in range(0, dm.max() + 1, 2):
        sel = absq[dm == n]
        if sel.size:
            out[n] = out.get(n, 0.0) + mult * float(sel.sum())


def coherence_spectrum(
    states: list[BlockState], purity: float, d_tau: float | None = None
) -> CoherenceSpectrum:
    """Bin propagated blocks into normalized coherence intensities.

    All blocks must be at the same time.  Raises ConsistencyError if the
    intensity sum deviates from 1 beyond 1e-9.
    """
    if not states:
        raise ValueError("no blocks to accumulate")
    t = states[0].time if d_tau is None else d_tau
    if any(abs(s.time - t) > 1e-12 for s in states):
        raise ValueError("blocks propagated to different times")
    bins: dict[int, float] = {0: 0.0}
    for s in states:
        _accumulate_orders(s.rho, s.chain.m_values, s.multiplicity, bins)
    intensities = {n: v / purity for n, v in bins.items()}
    spec = CoherenceSpectrum(time=t, intensities=intensities, normalization=purity)
    if abs(spec.total() - 1.0) > SUM_RULE_TOL:
        raise ConsistencyError(
            f"coherence sum rule violated at tau={t}: total={spec.total()!r}"
        )
    return spec


@dataclass(frozen=True)
class SimulationResult:
    """Coherence intensities on a time grid, with derived metrics deferred.

    Attributes
    ----------
    n_spins : int
    params : TemperatureParams
    taus : numpy.ndarray
        Dimensionless time grid.
    orders : numpy.ndarray
        Nonnegative even coherence orders, ascending.
    intensities : numpy.ndarray
        Shape (len(taus), len(orders)); column j is J_{orders[j]}(tau).
    normalization : float
        Purity of the initial state, Tr{rho_i**2}.
    """

    n_spins: int
    params: TemperatureParams
    taus: np.ndarray
    orders: np.ndarray
    intensities: np.ndarray
    normalization: float

    def spectrum_at(self, i: int) -> CoherenceSpectrum:
        vals = {int(n): float(v) for n, v in zip(self.orders, self.intensities[i])}
        return CoherenceSpectrum(
            time=float(self.taus[i]), intensities=vals, normalization=self.normalization
        )

    def sum_rule_deviation(self) -> float:
        doubling = np.where(self.orders == 0, 1.0, 2.0)
        return float(np.abs(self.intensities @ doubling - 1.0).max())


def simulate_grid(
    n_spins: int,
    params: TemperatureParams,
    taus: np.ndarray,
    check_sum_rule: bool = True,
) -> SimulationResult:
    """Coherence intensities for all times on a grid, batched per chain.

    Equivalent to build_initial_state + propagate + coherence_spectrum at
    each grid point, but the phase rotation is applied to the whole grid at
    once.  Accumulation order over sectors and chains is fixed, so results
    are reproducible bit for bit.
    """
    taus = np.asarray(taus, dtype=float)
    if taus.ndim != 1 or taus.size == 0:
        raise ValueError("time grid must be a nonempty 1-d array")
    sectors = enumerate_sectors(n_spins)
    states, purity = build_initial_state(sectors, params)

    max_order = n_spins - 1 if n_spins % 2 else n_spins
    orders = np.arange(0, max_order + 1, 2)
    col = {n: j for j, n in enumerate(orders)}
    acc = np.zeros((taus.size, orders.size))

    for st in states:
        d = st.chain.dim
        w = np.real(np.diag(st.rho))
        if d == 1:
            acc[:, 0] += st.multiplicity * float(w[0]) ** 2
            continue
        lam, v = st.eigvals, st.eigvecs
        a = v.T @ np.diag(w) @ v
        # rho(t) = V (A o exp(-i dL t)) V^T, dL_ij = lam_i - lam_j
        phases = np.exp(-1j * np.subtract.outer(lam, lam)[None, :, :] * taus[:, None, None])
        rho_t = v @ (a[None, :, :] * phases) @ v.T
        absq = np.abs(rho_t) ** 2
        ms = st.chain.m_values
        dm = np.rint(ms[:, None] - ms[None, :]).astype(int)
        for n in range(0, dm.max() + 1, 2):
            mask = dm == n
            if mask.any():
                acc[:, col[n]] += st.multiplicity * absq[:, mask].sum(axis=1)

    intensities = acc / purity
    result = SimulationResult(
        n_spins=n_spins,
        params=params,
        taus=taus,
        orders=orders,
        intensities=intensities,
        normalization=purity,
    )
    if check_sum_rule and result.sum_rule_deviation() > SUM_RULE_TOL:
        raise ConsistencyError(
            f"coherence sum rule violated: max deviation {result.sum_rule_deviation():.3e}"
        )
    return result
