"""The three figure kinds: coherence curves, bounded F_Q curves, sweeps.

Rendering is deterministic: fixed backend, fixed styling, no timestamps in
the image content, so re-running on the same inputs reproduces the file
byte for byte.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .tables import FigureDataError, FigureSpec, Table, infer_spin_count, load_table, resolve_bounds  # noqa: E402

__all__ = ["build_figure", "render"]

matplotlib.rcParams["svg.hashsalt"] = "figscripts"

FIGSIZE = (6.4, 4.2)
DPI = 150


def _coherence_columns(table: Table) -> list[str]:
    cols = [c for c in table.columns if c.startswith("J_")]
    if not cols:
        raise FigureDataError(f"{table.path}: no J_n columns found")
    return sorted(cols, key=lambda c: int(c.split("_", 1)[1]))


def _build_coherences(spec: FigureSpec):
    table = load_table(spec.inputs[0])
    taus = table.column("D_tau")
    fig, ax = plt.subplots(figsize=FIGSIZE)
    for col in _coherence_columns(table):
        order = col.split("_", 1)[1]
        ax.plot(taus, table.column(col), label=rf"$J_{{{order}}}$")
    ax.set_xlabel(r"$D\tau$")
    ax.set_ylabel("coherence intensity")
    ax.set_ylim(bottom=0.0)
    ax.legend(loc="center right")
    return fig, ax


def _build_fisher_bounds(spec: FigureSpec):
    table = load_table(spec.inputs[0])
    taus = table.column("D_tau")
    fq = table.column("FQ_lower")
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.plot(taus, fq, label=r"$F_Q$ lower bound")
    if spec.bounds:
        n = infer_spin_count(spec.inputs[0], spec.n_spins)
        resolved = resolve_bounds(n, spec.bounds, spec.bound_table)
        for k in sorted(resolved):
            ax.axhline(
                resolved[k],
                linestyle="--",
                linewidth=1.0,
                color="black",
                label=f"$B({n},{k}) = {resolved[k]}$",
            )
    ax.set_xlabel(r"$D\tau$")
    ax.set_ylabel("quantum Fisher information")
    ax.legend(loc="upper right")
    return fig, ax


def _build_sweep(spec: FigureSpec):
    tables = [load_table(p) for p in spec.inputs]
    fig, ax = plt.subplots(figsize=FIGSIZE)
    rows = np.vstack([np.column_stack([t.column("N"), t.column("T_kelvin"),
                                       t.column("b"), t.column("avg_max_entangled")])
                      for t in tables])
    use_kelvin = np.isfinite(rows[:, 1]).all()
    x_col = 1 if use_kelvin else 2
    for n in sorted(set(rows[:, 0].astype(int))):
        sel = rows[rows[:, 0].astype(int) == n]
        sel = sel[np.argsort(sel[:, x_col])]
        ax.plot(sel[:, x_col], sel[:, 3], marker="o", label=f"$N = {n}$")
    ax.set_xscale("log")
    ax.set_xlabel("T (K)" if use_kelvin else "inverse dipolar temperature b")
    ax.set_ylabel("averaged maximal entangled spins")
    ax.legend(loc="best")
    return fig, ax


_BUILDERS = {
    "coherences": _build_coherences,
    "fisher-bounds": _build_fisher_bounds,
    "sweep": _build_sweep,
}


def build_figure(spec: FigureSpec):
    """Figure and axes for a spec, without touching the output path."""
    return _BUILDERS[spec.kind](spec)


def _savefig_metadata(suffix: str) -> dict | None:
    # keep version strings and dates out of the bytes so identical inputs
    # give identical files
    if suffix == ".png":
        return {"Software": "figscripts"}
    if suffix == ".svg":
        return {"Date": None}
    if suffix == ".pdf":
        return {"CreationDate": None}
    return None


def render(spec: FigureSpec) -> Path:
    """Render the figure to spec.out and return that path."""
    fig, _ = build_figure(spec)
    try:
        out = Path(spec.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out, dpi=DPI, metadata=_savefig_metadata(out.suffix.lower()))
    finally:
        plt.close(fig)
    return out
