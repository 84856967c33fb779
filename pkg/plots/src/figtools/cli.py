"""Command line: plot curves|landscape|sweep --in PATH[...] --out PATH.

Exit status: 0 success, 1 usage/format error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import sys

from .readers import FormatError
from .render import plot_curves, plot_landscape, plot_sweep


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pottsdiff-plot", description=__doc__)
    sub = parser.add_subparsers(dest="kind", required=True)

    p = sub.add_parser("curves", help="adoption fractions vs tick")
    p.add_argument("--in", dest="inputs", required=True, nargs=1,
                   help="time-series CSV")
    p.add_argument("--out", required=True, help="output image path")

    p = sub.add_parser("landscape", help="adoption landscape raster")
    p.add_argument("--in", dest="inputs", required=True, nargs=1,
                   help="landscape grid file")
    p.add_argument("--out", required=True, help="output image path")

    p = sub.add_parser("sweep", help="saturation shares vs swept value")
    p.add_argument("--in", dest="inputs", required=True, nargs="+",
                   help="one or more sweep CSVs (rows concatenated)")
    p.add_argument("--out", required=True, help="output image path")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.kind == "curves":
            plot_curves(args.inputs[0], args.out)
        elif args.kind == "landscape":
            plot_landscape(args.inputs[0], args.out)
        else:
            plot_sweep(args.inputs, args.out)
        return 0
    except (UsageError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


def app() -> None:
    sys.exit(main())
