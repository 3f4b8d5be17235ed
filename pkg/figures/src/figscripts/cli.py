"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 unusable input (missing file or
column, empty CSV, failed bound-table lookup).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .render import render
from .tables import KINDS, FigureDataError, FigureSpec

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> _Parser:
    parser = _Parser(prog="figscripts", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument(
        "--input",
        required=True,
        action="append",
        help="input CSV (repeatable for the sweep kind)",
    )
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--bounds", help="comma-separated cluster sizes k to draw B(N,k) lines for")
    parser.add_argument("--bound-table", dest="bound_table", help="saved bound-table CSV")
    parser.add_argument("--n", type=int, help="spin count override for bound lookup")
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        bounds = tuple(int(tok) for tok in args.bounds.split(",") if tok.strip()) if args.bounds else ()
        spec = FigureSpec(
            kind=args.kind,
            inputs=tuple(Path(p) for p in args.input),
            out=Path(args.out),
            bounds=bounds,
            bound_table=Path(args.bound_table) if args.bound_table else None,
            n_spins=args.n,
        )
        out = render(spec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FigureDataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    print(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
