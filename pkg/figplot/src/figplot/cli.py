"""Command line entry point: figplot <csv> -o <image> [--format ...]."""

import argparse
import sys

from . import __version__
from .plot import build_figure, resolve_format, save_figure
from .reader import SchemaError, read_sweep


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="figplot",
        description="Render a delta-sweep CSV as a log-log comparison chart.",
    )
    parser.add_argument("csv", help="delta-sweep CSV file to plot")
    parser.add_argument(
        "-o",
        "--out",
        required=True,
        help="output image path",
    )
    parser.add_argument(
        "--format",
        choices=("vector", "raster"),
        help="vector writes svg, raster writes png; default is taken "
        "from the output extension, falling back to vector",
    )
    parser.add_argument(
        "--version", action="version", version=f"figplot {__version__}"
    )
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)

    try:
        table = read_sweep(args.csv)
    except SchemaError as exc:
        print(f"figplot: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"figplot: error: cannot read {args.csv}: {exc}", file=sys.stderr)
        return 2

    fig = build_figure(table)
    try:
        save_figure(fig, args.out, resolve_format(args.out, args.format))
    except OSError as exc:
        print(f"figplot: error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
