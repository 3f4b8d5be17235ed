"""Command-line runner: simulations, sweeps, oracle checks, persistence.

Exit codes: 0 success, 1 usage error, 2 failed consistency check, 3 I/O
failure.  Output location defaults to $MQNMR_OUT, then the working
directory.  All numeric output uses 17 significant digits so CSV values
round-trip to the exact double.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .dense import BJParams, bj_sequence, coherences_via_phase, dense_simulate
from .dynamics import ConsistencyError, TemperatureParams, simulate_grid
from .metrics import (
    entanglement_bound,
    entanglement_reports,
    time_average_max_entangled,
)
from .sectors import DEFAULT_CONSTANTS
from .three_spin import three_spin_curve

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONSISTENCY = 2
EXIT_IO = 3

ENV_OUT = "MQNMR_OUT"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract here is 1
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass
class RunConfig:
    n_values: list[int]
    t_kelvin: list[float] | None
    b_values: list[float] | None
    mode: str = "exact"
    tau_start: float = 0.0
    tau_stop: float = 3.0
    tau_step: float = 0.01
    out_dir: str = "."
    jobs: int = 0  # 0: use hardware parallelism
    deterministic: bool = False

    def __post_init__(self) -> None:
        if self.tau_step <= 0:
            raise ValueError("tau step must be positive")
        if self.tau_stop <= self.tau_start:
            raise ValueError("tau stop must exceed tau start")
        if (self.t_kelvin is None) == (self.b_values is None):
            raise ValueError("specify temperatures either in Kelvin or as b, not both")
        if self.mode not in ("exact", "linearized"):
            raise ValueError(f"unknown mode {self.mode!r}")

    def tau_grid(self) -> np.ndarray:
        count = round((self.tau_stop - self.tau_start) / self.tau_step) + 1
        return self.tau_start + self.tau_step * np.arange(count)

    def temperature_params(self) -> list[TemperatureParams]:
        if self.t_kelvin is not None:
            return [
                TemperatureParams.from_temperature(t, mode=self.mode) for t in self.t_kelvin
            ]
        return [TemperatureParams(b=b, mode=self.mode) for b in self.b_values]


def parse_config_file(path: str) -> dict[str, str]:
    """Flat key = value file; '#' starts a comment; keys match CLI flags."""
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _resolve(args: argparse.Namespace, key: str, cast, default=None):
    val = getattr(args, key, None)
    if val is None and args.config_values and key in args.config_values:
        val = args.config_values[key]
    if val is None:
        return default
    # flags arrive as raw strings for list-valued options; config values always do
    return cast(val) if isinstance(val, str) else val


def _build_config(args: argparse.Namespace) -> RunConfig:
    out_env = os.environ.get(ENV_OUT)
    return RunConfig(
        n_values=_resolve(args, "n", _int_list) or [],
        t_kelvin=_resolve(args, "temp_kelvin", _float_list),
        b_values=_resolve(args, "b", _float_list),
        mode=_resolve(args, "mode", str, "exact"),
        tau_start=_resolve(args, "tau_start", float, 0.0),
        tau_stop=_resolve(args, "tau_stop", float, 3.0),
        tau_step=_resolve(args, "tau_step", float, 0.01),
        out_dir=_resolve(args, "out", str, out_env or "."),
        jobs=_resolve(args, "jobs", int, 0),
        deterministic=bool(
            _resolve(args, "deterministic", lambda s: s.lower() in ("1", "true", "yes"), False)
        ),
    )


def _constants_dict() -> dict:
    c = DEFAULT_CONSTANTS
    return {
        "d_coupling_rad_s": c.d_coupling,
        "omega0_rad_s": c.omega0,
        "hbar": c.hbar,
        "k_boltzmann": c.k_boltzmann,
        "dipolar_kelvin": c.dipolar_kelvin,
        "zeeman_kelvin": c.zeeman_kelvin,
    }


def _write_rows(path: str, header: list[str], rows: list[list[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _simulate_one(n: int, params: TemperatureParams, cfg: RunConfig) -> tuple[str, str]:
    """Run one (N, temperature) point and persist CSV plus JSON sidecar."""
    taus = cfg.tau_grid()
    result = simulate_grid(n, params, taus)
    reports = entanglement_reports(result)

    keep = [
        j
        for j, n_ord in enumerate(result.orders)
        if result.intensities[:, j].max() > 1e-15 or n_ord == 0
    ]
    header = (
        ["D_tau"]
        + [f"J_{int(result.orders[j])}" for j in keep]
        + ["M2", "FQ_lower", "max_entangled_spins"]
    )
    rows = []
    for i, rep in enumerate(reports):
        row = [_fmt(result.taus[i])]
        row += [_fmt(result.intensities[i, j]) for j in keep]
        row += [_fmt(rep.m2), _fmt(rep.fq_lower), str(rep.max_entangled_spins)]
        rows.append(row)

    tag = (
        f"T{params.t_kelvin:g}" if params.t_kelvin is not None else f"b{params.b:g}"
    )
    base = os.path.join(cfg.out_dir, f"sim_N{n}_{tag}")
    _write_rows(base + ".csv", header, rows)

    sidecar = {
        "command": "simulate",
        "version": __version__,
        "n": n,
        "t_kelvin": params.t_kelvin,
        "b": params.b,
        "mode": params.mode,
        "tau_grid": {
            "start": cfg.tau_start,
            "stop": cfg.tau_stop,
            "step": cfg.tau_step,
            "count": len(taus),
        },
        "constants": _constants_dict(),
        "trace_rho_i_squared": result.normalization,
        "columns": header,
        "column_threshold": 1e-15,
        "deterministic": cfg.deterministic,
    }
    with open(base + ".json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return base + ".csv", base + ".json"


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    if not cfg.n_values:
        raise ValueError("no spin counts given (--n)")
    for n in cfg.n_values:
        if n % 2 == 0:
            raise ValueError(f"simulate requires odd N (got {n}); even N is oracle-only")
    os.makedirs(cfg.out_dir, exist_ok=True)
    written = []
    for n in cfg.n_values:
        for params in cfg.temperature_params():
            written.extend(_simulate_one(n, params, cfg))
    for path in written:
        print(path)
    return EXIT_OK


def _sweep_point(task: tuple) -> tuple:
    n, t_kelvin, b, mode, tau_start, tau_stop, tau_step = task
    params = (
        TemperatureParams.from_temperature(t_kelvin, mode=mode)
        if t_kelvin is not None
        else TemperatureParams(b=b, mode=mode)
    )
    count = round((tau_stop - tau_start) / tau_step) + 1
    taus = tau_start + tau_step * np.arange(count)
    result = simulate_grid(n, params, taus)
    sweep = time_average_max_entangled(
        entanglement_reports(result), t_kelvin=t_kelvin, b=params.b
    )
    return (n, t_kelvin, params.b, sweep.avg_max_entangled, sweep.peak_fq)


def default_sweep_temperatures(points: int = 8) -> list[float]:
    """Log-spaced Kelvin grid over [1e-5, 1e-3], the sweep default."""
    return list(np.logspace(-5.0, -3.0, points))


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    if not cfg.n_values:
        raise ValueError("no spin counts given (--n)")
    for n in cfg.n_values:
        if n % 2 == 0:
            raise ValueError(f"sweep requires odd N (got {n}); even N is oracle-only")
    os.makedirs(cfg.out_dir, exist_ok=True)

    if cfg.t_kelvin is not None:
        temp_axis = [(t, None) for t in cfg.t_kelvin]
    else:
        temp_axis = [(None, b) for b in cfg.b_values]
    tasks = [
        (n, t, b, cfg.mode, cfg.tau_start, cfg.tau_stop, cfg.tau_step)
        for n in cfg.n_values
        for (t, b) in temp_axis
    ]
    jobs = 1 if cfg.deterministic else (cfg.jobs or os.cpu_count() or 1)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_point, tasks))
    else:
        results = [_sweep_point(t) for t in tasks]

    header = ["N", "T_kelvin", "b", "avg_max_entangled", "peak_fq"]
    rows = [
        [str(n), "" if t is None else _fmt(t), _fmt(b), _fmt(avg), _fmt(peak)]
        for (n, t, b, avg, peak) in results
    ]
    path = os.path.join(cfg.out_dir, "sweep.csv")
    _write_rows(path, header, rows)
    sidecar = {
        "command": "sweep",
        "version": __version__,
        "n_values": cfg.n_values,
        "t_kelvin": cfg.t_kelvin,
        "b_values": cfg.b_values,
        "mode": cfg.mode,
        "tau_grid": {"start": cfg.tau_start, "stop": cfg.tau_stop, "step": cfg.tau_step},
        "constants": _constants_dict(),
        "deterministic": cfg.deterministic,
        "no_certification_counts_as": 1,
    }
    with open(os.path.join(cfg.out_dir, "sweep.json"), "w", encoding="utf-8", newline="\n") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(path)
    return EXIT_OK


def cmd_oracle3(args: argparse.Namespace) -> int:
    b_values = _float_list(args.b) if args.b else [0.01, 0.5, 2.0]
    points = args.points
    taus = np.linspace(0.0, 3.0, points)
    tol = 1e-10
    worst = 0.0
    for b in b_values:
        result = simulate_grid(3, TemperatureParams(b=b), taus)
        curve = three_spin_curve(b, taus)
        dev0 = np.abs(result.intensities[:, 0] - curve.samples[:, 1]).max()
        dev2 = np.abs(result.intensities[:, 1] - curve.samples[:, 2]).max()
        dev = max(dev0, dev2)
        worst = max(worst, dev)
        print(f"b={b:g}: max|J_block - J_analytic| = {dev:.3e}")
    ok = worst <= tol
    print(f"{'PASS' if ok else 'FAIL'}: worst deviation {worst:.3e} (tolerance {tol:g})")
    return EXIT_OK if ok else EXIT_CONSISTENCY


def cmd_oracle_compare(args: argparse.Namespace) -> int:
    n = args.n_single
    if n > 10:
        raise ValueError("dense oracle limited to N <= 10")
    tol = 1e-8
    worst = 0.0
    for b in (0.0, 0.1, 1.0):
        params = TemperatureParams(b=b)
        for d_tau in (0.3, 1.0, 2.7):
            block = simulate_grid(n, params, np.array([d_tau])).spectrum_at(0)
            dense = dense_simulate(n, params, d_tau)
            phase = coherences_via_phase(n, params, d_tau)
            for other in (dense, phase):
                for order in set(block.orders()) | set(other.orders()):
                    worst = max(worst, abs(block.intensity(order) - other.intensity(order)))
            print(
                f"b={b:g} D_tau={d_tau:g}: block/dense/phase agree to "
                f"{worst:.3e} so far"
            )
    ok = worst <= tol
    print(f"{'PASS' if ok else 'FAIL'}: worst deviation {worst:.3e} (tolerance {tol:g})")
    return EXIT_OK if ok else EXIT_CONSISTENCY


def cmd_bj_verify(args: argparse.Namespace) -> int:
    n = args.n_single
    rng = np.random.default_rng(args.seed)
    zeeman_tol, alpha_tol = 1e-12, 1e-10
    failures = 0
    worst_z = worst_a = 0.0
    for _ in range(args.draws):
        params = BJParams(
            n_spins=n,
            a=float(rng.uniform(0.0, 100.0)),
            theta=float(rng.uniform(0.0, math.pi)),
            tau=float(rng.uniform(0.0, 5.0)),
        )
        res = bj_sequence(params)
        worst_z = max(worst_z, res.zeeman_relative)
        worst_a = max(worst_a, abs(res.alpha_extracted))
        if res.zeeman_relative > zeeman_tol or abs(res.alpha_extracted) > alpha_tol:
            failures += 1
    betas = [
        abs(bj_sequence(BJParams(n_spins=n, a=40.0, theta=math.pi / 4, tau=t)).beta_extracted)
        for t in np.arange(0.0, 5.0001, 0.1)
    ]
    beta_ok = max(betas) > 1e-6
    print(f"zeeman residual worst {worst_z:.3e} (tol {zeeman_tol:g})")
    print(f"alpha residual worst {worst_a:.3e} (tol {alpha_tol:g})")
    print(f"dipolar order created: max|beta| = {max(betas):.6g}")
    ok = failures == 0 and beta_ok
    print(f"{'PASS' if ok else 'FAIL'}: {args.draws} randomized draws at N={n}")
    return EXIT_OK if ok else EXIT_CONSISTENCY


def cmd_bound_table(args: argparse.Namespace) -> int:
    n = args.n_single
    header = ["N", "k", "B"]
    rows = [[str(n), str(k), str(entanglement_bound(n, k))] for k in range(1, n)]
    if args.out:
        os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
        _write_rows(args.out, header, rows)
        print(args.out)
    else:
        print(",".join(header))
        for row in rows:
            print(",".join(row))
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="mqnmr", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p: _Parser) -> None:
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument("--n", help="comma-separated spin counts")
        p.add_argument("--temp-kelvin", dest="temp_kelvin", help="temperatures in Kelvin")
        p.add_argument("--b", help="dimensionless inverse dipolar temperatures")
        p.add_argument("--mode", choices=["exact", "linearized"])
        p.add_argument("--tau-start", dest="tau_start", type=float)
        p.add_argument("--tau-stop", dest="tau_stop", type=float)
        p.add_argument("--tau-step", dest="tau_step", type=float)
        p.add_argument("--out", help="output directory")
        p.add_argument("--jobs", type=int, help="worker processes (default: all cores)")
        p.add_argument(
            "--deterministic",
            action="store_const",
            const="true",
            help="single-worker, fixed reduction order, byte-stable output",
        )

    p_sim = sub.add_parser("simulate", help="coherence dynamics for each (N, T)")
    add_common(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="aggregate entanglement over an (N, T) grid")
    add_common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_o3 = sub.add_parser("oracle3", help="three-spin closed form vs block dynamics")
    p_o3.add_argument("--b", help="comma-separated b values")
    p_o3.add_argument("--points", type=int, default=300)
    p_o3.set_defaults(func=cmd_oracle3)

    p_oc = sub.add_parser("oracle-compare", help="block vs dense vs phase readout")
    p_oc.add_argument("--n", dest="n_single", type=int, default=5)
    p_oc.set_defaults(func=cmd_oracle_compare)

    p_bj = sub.add_parser("bj-verify", help="two-pulse dipolar-order bookkeeping checks")
    p_bj.add_argument("--n", dest="n_single", type=int, default=6)
    p_bj.add_argument("--draws", type=int, default=50)
    p_bj.add_argument("--seed", type=int, default=0)
    p_bj.set_defaults(func=cmd_bj_verify)

    p_bt = sub.add_parser("bound-table", help="print B(N,k) for all k")
    p_bt.add_argument("--n", dest="n_single", type=int, required=True)
    p_bt.add_argument("--out", help="write CSV here instead of stdout")
    p_bt.set_defaults(func=cmd_bound_table)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # _Parser.error raises SystemExit(1)
        return int(exc.code or 0)
    try:
        args.config_values = (
            parse_config_file(args.config) if getattr(args, "config", None) else {}
        )
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
