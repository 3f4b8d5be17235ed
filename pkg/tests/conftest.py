"""Shared helpers: dense coupled-basis construction from first principles."""

from __future__ import annotations

import numpy as np
import pytest

from mqnmr.dense import collective_operators


def coupled_copy_ladders(n_spins: int) -> list[tuple[float, list[np.ndarray]]]:
    """Explicit |S, M> ladders for every degenerate copy of every sector.

    Highest-weight states are found as the kernel of the raising operator
    inside each I_z eigenspace; each is lowered step by step with exact
    normalization.  Returns a list of (S, [v_{M=-S}, ..., v_{M=+S}]) with
    one entry per copy, built purely from dense product-basis operators.
    """
    ops = collective_operators(n_spins)
    ix, iy, iz = ops["I_x"].matrix, ops["I_y"].matrix, ops["I_z"].matrix
    ip = ix + 1j * iy
    im = ix - 1j * iy
    dim = 2**n_spins
    mdiag = np.real(np.diag(iz))

    ladders: list[tuple[float, list[np.ndarray]]] = []
    m = n_spins / 2.0
    while m > -0.25:
        cols = np.flatnonzero(np.abs(mdiag - m) < 1e-9)
        if cols.size == 0:
            break
        basis = np.zeros((dim, cols.size), dtype=complex)
        basis[cols, np.arange(cols.size)] = 1.0
        # kernel of I+ restricted to the m eigenspace = highest-weight states
        k = ip @ basis
        _, svals, vh = np.linalg.svd(k, full_matrices=True)
        null = [vh.conj().T[:, j] for j in range(cols.size) if j >= svals.size or svals[j] < 1e-9]
        for coeffs in null:
            top = basis @ coeffs
            s = m
            chain = [top]
            mm = s
            while mm > -s + 0.5:
                v = im @ chain[-1]
                norm = np.sqrt(s * (s + 1) - mm * (mm - 1))
                chain.append(v / norm)
                mm -= 1.0
            ladders.append((s, list(reversed(chain))))  # ascending M
        m -= 1.0
    return ladders


@pytest.fixture
def coupled_ladders():
    """Injects the ladder builder; keeps test modules free of path imports."""
    return coupled_copy_ladders
