"""Input handling: simulation CSVs, sweep CSVs, sidecars, bound tables."""

from __future__ import annotations

import json
import re
import subprocess
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "FigureDataError",
    "FigureSpec",
    "Table",
    "infer_spin_count",
    "load_table",
    "resolve_bounds",
    "sidecar_for",
]

KINDS = ("coherences", "fisher-bounds", "sweep")


class FigureDataError(RuntimeError):
    """Input unusable: file missing, empty, malformed, or column absent."""


@dataclass(frozen=True)
class FigureSpec:
    """Everything needed to produce one figure."""

    kind: str
    inputs: tuple[Path, ...]
    out: Path
    bounds: tuple[int, ...] = ()
    bound_table: Path | None = None
    n_spins: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; choose from {KINDS}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")
        if self.kind != "sweep" and len(self.inputs) != 1:
            raise ValueError(f"kind {self.kind!r} takes exactly one input CSV")
        if self.bounds and self.kind != "fisher-bounds":
            raise ValueError("bound lines only apply to the fisher-bounds kind")


@dataclass(frozen=True)
class Table:
    """One parsed CSV: column names plus a float matrix (blanks are NaN)."""

    path: Path
    columns: list[str]
    rows: np.ndarray

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise FigureDataError(f"{self.path}: missing column {name!r}")
        return self.rows[:, self.columns.index(name)]

    def has(self, name: str) -> bool:
        return name in self.columns


def _parse_cell(text: str) -> float:
    text = text.strip()
    if not text:
        return float("nan")
    return float(text)


def load_table(path: Path) -> Table:
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except FileNotFoundError:
        raise FigureDataError(f"{path}: no such file") from None
    if not lines:
        raise FigureDataError(f"{path}: file is empty")
    columns = [c.strip() for c in lines[0].split(",")]
    body = [line for line in lines[1:] if line.strip()]
    if not body:
        raise FigureDataError(f"{path}: no data rows")
    rows = np.empty((len(body), len(columns)))
    for i, line in enumerate(body):
        cells = line.split(",")
        if len(cells) != len(columns):
            raise FigureDataError(
                f"{path}:{i + 2}: expected {len(columns)} fields, got {len(cells)}"
            )
        try:
            rows[i] = [_parse_cell(c) for c in cells]
        except ValueError as exc:
            raise FigureDataError(f"{path}:{i + 2}: {exc}") from None
    return Table(path=Path(path), columns=columns, rows=rows)


def sidecar_for(csv_path: Path) -> dict | None:
    """Metadata written next to every simulation CSV, if still present."""
    sidecar = Path(csv_path).with_suffix(".json")
    if not sidecar.exists():
        return None
    try:
        return json.loads(sidecar.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return None


def infer_spin_count(csv_path: Path, override: int | None = None) -> int:
    """Spin count for a simulation CSV: flag, then sidecar, then filename."""
    if override is not None:
        return override
    meta = sidecar_for(csv_path)
    if meta and isinstance(meta.get("n"), int):
        return meta["n"]
    match = re.search(r"sim_N(\d+)_", Path(csv_path).name)
    if match:
        return int(match.group(1))
    raise FigureDataError(
        f"{csv_path}: cannot determine the spin count (no sidecar; pass --n)"
    )


def _parse_bound_csv(text: str, source: str) -> dict[tuple[int, int], int]:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or [c.strip() for c in lines[0].split(",")] != ["N", "k", "B"]:
        raise FigureDataError(f"{source}: not a bound table (expected header N,k,B)")
    table: dict[tuple[int, int], int] = {}
    for line in lines[1:]:
        n, k, bound = (int(c) for c in line.split(","))
        table[(n, k)] = bound
    return table


def resolve_bounds(
    n_spins: int, ks: tuple[int, ...], bound_table: Path | None
) -> dict[int, int]:
    """Map each requested cluster size k to its bound value B(N, k).

    Values come from a saved `bound-table` CSV when one is given, otherwise
    from running `mqnmr bound-table` directly; they are never recomputed
    here.
    """
    for k in ks:
        if not 1 <= k <= n_spins - 1:
            raise ValueError(f"k={k} outside [1, {n_spins - 1}]")
    if bound_table is not None:
        table = _parse_bound_csv(Path(bound_table).read_text(encoding="utf-8"), str(bound_table))
    else:
        proc = subprocess.run(
            ["mqnmr", "bound-table", "--n", str(n_spins)],
            capture_output=True,
            text=True,
        )
        if proc.returncode != 0:
            raise FigureDataError(
                f"mqnmr bound-table exited {proc.returncode}: {proc.stderr.strip()}"
            )
        table = _parse_bound_csv(proc.stdout, "mqnmr bound-table")
    out = {}
    for k in ks:
        if (n_spins, k) not in table:
            raise FigureDataError(f"bound table has no entry for N={n_spins}, k={k}")
        out[k] = table[(n_spins, k)]
    return out
