"""Full 2**N product-basis oracle for small clusters.

Everything here is deliberately independent of the block pipeline: operators
are assembled from single-spin Pauli matrices by Kronecker products, states
are exponentiated in full, and coherence orders are read off either by
binning matrix elements or through the phase-increment readout that an
actual experiment performs.  Intended for N <= 10.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import CoherenceSpectrum, TemperatureParams
from .sectors import DEFAULT_CONSTANTS, PhysicalConstants

__all__ = [
    "DenseOperator",
    "BJParams",
    "BJResult",
    "collective_operators",
    "dense_initial_state",
    "dense_evolved",
    "dense_simulate",
    "phase_readout",
    "coherences_via_phase",
    "bj_sequence",
]

MAX_DENSE_SPINS = 10
MAX_BJ_SPINS = 8

_SX = np.array([[0.0, 0.5], [0.5, 0.0]], dtype=complex)
_SY = np.array([[0.0, -0.5j], [0.5j, 0.0]], dtype=complex)
_SZ = np.array([[0.5, 0.0], [0.0, -0.5]], dtype=complex)


@dataclass(frozen=True)
class DenseOperator:
    matrix: np.ndarray
    label: str


def _embed(op: np.ndarray, site: int, n_spins: int) -> np.ndarray:
    m = np.eye(1, dtype=complex)
    for j in range(n_spins):
        m = np.kron(m, op if j == site else np.eye(2, dtype=complex))
    return m


def collective_operators(n_spins: int) -> dict[str, DenseOperator]:
    """Collective spin operators and Hamiltonians in the product basis.

    Hamiltonians are dimensionless (units of D).  Memory-guarded to
    N <= 10.
    """
    if n_spins > MAX_DENSE_SPINS:
        raise ValueError(f"dense path limited to N <= {MAX_DENSE_SPINS}")
    if n_spins < 1:
        raise ValueError("need at least one spin")
    dim = 2**n_spins
    ix = np.zeros((dim, dim), dtype=complex)
    iy = np.zeros_like(ix)
    iz = np.zeros_like(ix)
    for site in range(n_spins):
        ix += _embed(_SX, site, n_spins)
        iy += _embed(_SY, site, n_spins)
        iz += _embed(_SZ, site, n_spins)
    i2 = ix @ ix + iy @ iy + iz @ iz
    ip = ix + 1j * iy
    im = ix - 1j * iy
    h_mq = -0.25 * (ip @ ip + im @ im)
    h_dz = 0.5 * (3.0 * iz @ iz - i2)
    return {
        "I_x": DenseOperator(ix, "I_x"),
        "I_y": DenseOperator(iy, "I_y"),
        "I_z": DenseOperator(iz, "I_z"),
        "I2": DenseOperator(i2, "I2"),
        "H_MQ": DenseOperator(h_mq, "H_MQ"),
        "H_dz": DenseOperator(h_dz, "H_dz"),
    }


def dense_initial_state(
    n_spins: int, params: TemperatureParams, ops: dict[str, DenseOperator] | None = None
) -> tuple[np.ndarray, float]:
    """Thermal state of the dipolar reservoir as a full matrix.

    Returns (rho, purity).  The exponential is taken in the eigenbasis of
    (b/2)(3 I_z^2 - I^2) with the largest exponent factored out.
    """
    if ops is None:
        ops = collective_operators(n_spins)
    x = 0.5 * params.b * (3.0 * ops["I_z"].matrix @ ops["I_z"].matrix - ops["I2"].matrix)
    x = np.real(x)
    dim = x.shape[0]
    if params.mode == "linearized":
        rho = (np.eye(dim) + x) / dim
    else:
        lam, vec = np.linalg.eigh(x)
        w = np.exp(lam - lam.max())
        rho = (vec * w) @ vec.conj().T
        rho /= w.sum()
    purity = float(np.vdot(rho, rho).real)
    return rho.astype(complex), purity


def _zeeman_projections(n_spins: int) -> np.ndarray:
    # I_z eigenvalue of each product state: (popcount of zeros - ones)/2
    dim = 2**n_spins
    bits = np.array([bin(i).count("1") for i in range(dim)])
    return (n_spins - 2 * bits) / 2.0


def dense_evolved(
    n_spins: int, params: TemperatureParams, d_tau: float
) -> tuple[np.ndarray, float, np.ndarray, dict[str, DenseOperator]]:
    """Evolved state under the two-quantum Hamiltonian, plus bookkeeping.

    Returns (rho_t, purity, m_values, ops) where m_values[i] is the I_z
    eigenvalue of product state i.
    """
    if n_spins > MAX_DENSE_SPINS:
        raise ValueError(f"dense path limited to N <= {MAX_DENSE_SPINS}")
    ops = collective_operators(n_spins)
    rho0, purity = dense_initial_state(n_spins, params, ops)
    lam, vec = np.linalg.eigh(ops["H_MQ"].matrix)
    u = (vec * np.exp(-1j * lam * d_tau)) @ vec.conj().T
    rho_t = u @ rho0 @ u.conj().T
    return rho_t, purity, _zeeman_projections(n_spins), ops


def dense_simulate(n_spins: int, params: TemperatureParams, d_tau: float) -> CoherenceSpectrum:
    """Coherence intensities by direct binning of the evolved full matrix."""
    rho_t, purity, mvals, _ = dense_evolved(n_spins, params, d_tau)
    dm = np.rint(mvals[:, None] - mvals[None, :]).astype(int)
    absq = np.abs(rho_t) ** 2
    intensities: dict[int, float] = {}
    for n in range(0, n_spins + 1):
        sel = absq[dm == n]
        if sel.size:
            val = float(sel.sum()) / purity
            if n % 2 == 0:
                intensities[n] = val
            elif val > 1e-20:
                # odd orders are forbidden by the two-quantum selection rule;
                # anything visibly nonzero is a bug upstream
                raise AssertionError(f"odd-order intensity J_{n}={val:g}")
    intensities.setdefault(0, 0.0)
    return CoherenceSpectrum(time=d_tau, intensities=intensities, normalization=purity)


def phase_readout(
    n_spins: int, params: TemperatureParams, d_tau: float, grid_size: int
) -> tuple[np.ndarray, np.ndarray, float]:
    """Correlation G(tau, phi) on a uniform phase grid and its DFT.

    G(tau, phi) = Tr{exp(i phi I_z) rho(tau) exp(-i phi I_z) rho(tau)},
    normalized by the initial purity.  Returns (phi_grid, coefficients,
    purity) where coefficients[n] is the weight of order n for
    0 <= n < grid_size (negative orders alias to grid_size - n).
    """
    if grid_size < 2 * n_spins + 2:
        raise ValueError(
            f"phase grid of {grid_size} aliases orders of an N={n_spins} cluster; "
            f"need at least {2 * n_spins + 2}"
        )
    rho_t, purity, mvals, _ = dense_evolved(n_spins, params, d_tau)
    absq = np.abs(rho_t) ** 2
    dm = mvals[:, None] - mvals[None, :]
    phis = 2.0 * np.pi * np.arange(grid_size) / grid_size
    g = np.array([np.sum(absq * np.exp(1j * phi * dm)).real for phi in phis])
    g /= purity
    coeffs = np.fft.fft(g).real / grid_size
    return phis, coeffs, purity


def coherences_via_phase(
    n_spins: int,
    params: TemperatureParams,
    d_tau: float,
    phase_grid_size: int | None = None,
) -> CoherenceSpectrum:
    """Coherence intensities recovered from the phase-increment protocol."""
    size = 2 * n_spins + 2 if phase_grid_size is None else phase_grid_size
    _, coeffs, purity = phase_readout(n_spins, params, d_tau, size)
    intensities = {n: float(coeffs[n]) for n in range(0, n_spins + 1, 2)}
    return CoherenceSpectrum(time=d_tau, intensities=intensities, normalization=purity)


# ---------------------------------------------------------------------------
# two-pulse preparation of dipolar order
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BJParams:
    """Parameters of the two-pulse dipolar-order preparation sequence."""

    n_spins: int
    a: float  # Zeeman exponent hbar*omega0/(k_B T)
    theta: float  # second-pulse angle, radians
    tau: float  # free-evolution time, dimensionless D*tau

    def __post_init__(self) -> None:
        if self.a < 0:
            raise ValueError("Zeeman exponent must be nonnegative")
        if not 0 <= self.theta <= np.pi:
            raise ValueError("pulse angle must lie in [0, pi]")
        if self.n_spins > MAX_BJ_SPINS:
            raise ValueError(f"sequence oracle limited to N <= {MAX_BJ_SPINS}")


@dataclass(frozen=True)
class BJResult:
    zeeman_trace: float
    dipolar_trace: float
    beta_extracted: float
    alpha_extracted: float
    zeeman_relative: float  # |Tr{I_z sigma}| scaled by operator norms


def bj_sequence(
    params: BJParams, constants: PhysicalConstants = DEFAULT_CONSTANTS
) -> BJResult:
    """Track Zeeman and dipolar order through the two-pulse sequence.

    The state after a 90-degree pulse on the Zeeman equilibrium is
    exp(a I_y)/Z; it evolves freely under the secular dipolar Hamiltonian
    for time tau and is then tipped by a theta pulse about y.  The Zeeman
    conservation law forces Tr{I_z sigma} = 0, so the inverse Zeeman
    temperature of the final quasi-equilibrium vanishes while the dipolar
    one does not: the sequence converts Zeeman order into dipolar order.

    Exponentials use the I_y eigenbasis with the maximal exponent factored
    out, so a ~ 100 does not overflow.
    """
    ops = collective_operators(params.n_spins)
    iy = ops["I_y"].matrix
    iz = ops["I_z"].matrix
    h_dz = ops["H_dz"].matrix
    dim = iy.shape[0]

    mu, w_y = np.linalg.eigh(iy)
    weights = np.exp(params.a * (mu - mu.max()))
    rho = (w_y * weights) @ w_y.conj().T
    rho /= weights.sum()

    lam, v = np.linalg.eigh(h_dz)
    u_free = (v * np.exp(-1j * lam * params.tau)) @ v.conj().T
    u_theta = (w_y * np.exp(-1j * params.theta * mu)) @ w_y.conj().T
    sigma = u_theta @ (u_free @ rho @ u_free.conj().T) @ u_theta.conj().T

    zeeman = float(np.trace(iz @ sigma).real)
    dipolar = float(np.trace(h_dz @ sigma).real)
    norm = float(np.linalg.norm(iz)) * float(np.linalg.norm(sigma))
    ratio = constants.omega0 / constants.d_coupling

    tr_iz2 = float(np.trace(iz @ iz).real)
    tr_hdz2 = float(np.trace(h_dz @ h_dz).real)
    alpha = dim * zeeman / (ratio * tr_iz2)
    beta = dim * dipolar / tr_hdz2
    return BJResult(
        zeeman_trace=zeeman,
        dipolar_trace=dipolar,
        beta_extracted=beta,
        alpha_extracted=alpha,
        zeeman_relative=abs(zeeman) / norm if norm else 0.0,
    )
