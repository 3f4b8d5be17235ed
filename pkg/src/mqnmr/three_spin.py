"""Closed-form coherence intensities for a three-spin cluster.

For N = 3 the dynamics can be solved by hand: the spin-3/2 sector reduces
to two 2x2 chains with eigen-gap sqrt(3)*D, and the spin-1/2 sectors carry
identity blocks that never evolve.  The resulting intensities

    J_0(tau) = 1 - (1/2) tanh^2(3b/2) sin^2(sqrt(3) D tau)
    J_2(tau) = (1/4) tanh^2(3b/2) sin^2(sqrt(3) D tau)

serve as a high-precision oracle for the numerical pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["ThreeSpinCurve", "j0_analytic", "j2_analytic", "three_spin_curve"]

SQRT3 = math.sqrt(3.0)


def _envelope(b: float) -> float:
    return math.tanh(1.5 * b) ** 2


def j0_analytic(b: float, d_tau: float) -> float:
    """Zero-order intensity of the three-spin cluster at dimensionless time."""
    if b < 0 or d_tau < 0:
        raise ValueError("b and d_tau must be nonnegative")
    return 1.0 - 0.5 * _envelope(b) * math.sin(SQRT3 * d_tau) ** 2


def j2_analytic(b: float, d_tau: float) -> float:
    """Intensity of each of the +/-2 orders for the three-spin cluster."""
    if b < 0 or d_tau < 0:
        raise ValueError("b and d_tau must be nonnegative")
    return 0.25 * _envelope(b) * math.sin(SQRT3 * d_tau) ** 2


@dataclass(frozen=True)
class ThreeSpinCurve:
    """Sampled closed-form curve: rows of (D*tau, J_0, J_2)."""

    b: float
    samples: np.ndarray  # shape (T, 3)

    def max_two_quantum(self) -> float:
        return float(self.samples[:, 2].max())


def three_spin_curve(b: float, taus: np.ndarray) -> ThreeSpinCurve:
    """Evaluate the closed forms on a time grid."""
    taus = np.asarray(taus, dtype=float)
    env = _envelope(b)
    s2 = np.sin(SQRT3 * taus) ** 2
    j2 = 0.25 * env * s2
    j0 = 1.0 - 2.0 * j2
    return ThreeSpinCurve(b=b, samples=np.column_stack([taus, j0, j2]))
