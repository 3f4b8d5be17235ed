"""Synthetic input files following the upstream CSV contract.

Fixtures fabricate plausible numbers; nothing here runs the physics.  The
schema (column names, 17-digit floats, sidecar keys) mirrors the documented
output of the `mqnmr` tool.
"""

import json
import math

import numpy as np
import pytest


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_sim_csv(path, n, taus, j_curves, sizes):
    orders = sorted(j_curves)
    header = ["D_tau"] + [f"J_{k}" for k in orders] + ["M2", "FQ_lower", "max_entangled_spins"]
    lines = [",".join(header)]
    for i, t in enumerate(taus):
        m2 = sum(k * k * (2.0 if k else 1.0) * j_curves[k][i] for k in orders)
        row = [fmt(t)] + [fmt(j_curves[k][i]) for k in orders]
        row += [fmt(m2), fmt(2.0 * m2), str(int(sizes[i]))]
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    sidecar = {
        "command": "simulate",
        "n": n,
        "b": 0.5,
        "t_kelvin": None,
        "columns": header,
        "tau_grid": {"start": float(taus[0]), "stop": float(taus[-1]), "count": len(taus)},
    }
    path.with_suffix(".json").write_text(json.dumps(sidecar, indent=2), encoding="utf-8")
    return path


@pytest.fixture
def three_spin_csv(tmp_path):
    taus = np.linspace(0.0, 3.0, 61)
    osc = np.sin(math.sqrt(3.0) * taus) ** 2
    j2 = 0.25 * 0.6 * osc
    j0 = 1.0 - 2.0 * j2
    sizes = np.where(8.0 * 0.6 * osc > 3.0, 2, 1)
    return write_sim_csv(tmp_path / "sim_N3_b0.5.csv", 3, taus, {0: j0, 2: j2}, sizes)


@pytest.fixture
def large_csv(tmp_path):
    # F_Q curve that rises through both reference lines and falls back
    taus = np.linspace(0.0, 3.0, 61)
    fq = 5000.0 * np.sin(1.2 * taus) ** 2
    j0 = np.full_like(taus, 0.9)
    j2 = np.full_like(taus, 0.05)
    sizes = np.where(fq > 4313.0, 47, np.where(fq > 1841.0, 20, 1))
    path = tmp_path / "sim_N101_b0.015.csv"
    header = ["D_tau", "J_0", "J_2", "M2", "FQ_lower", "max_entangled_spins"]
    lines = [",".join(header)]
    for i, t in enumerate(taus):
        lines.append(",".join([fmt(t), fmt(j0[i]), fmt(j2[i]), fmt(fq[i] / 2.0),
                               fmt(fq[i]), str(int(sizes[i]))]))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    path.with_suffix(".json").write_text(
        json.dumps({"command": "simulate", "n": 101, "b": 0.015, "columns": header}),
        encoding="utf-8",
    )
    return path


@pytest.fixture
def bound_table_csv(tmp_path):
    rows = ["N,k,B", "101,1,101", "101,19,1841", "101,46,4313", "101,100,9802"]
    path = tmp_path / "bounds_N101.csv"
    path.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def sweep_csv(tmp_path):
    temps = np.logspace(-5, -3, 6)
    lines = ["N,T_kelvin,b,avg_max_entangled,peak_fq"]
    for n in (51, 101):
        for i, t in enumerate(temps):
            avg = 1.0 + (n / 10.0) / (1.0 + i)
            lines.append(",".join([str(n), fmt(t), fmt(4.8e-7 / t), fmt(avg), fmt(n * avg)]))
    path = tmp_path / "sweep.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
