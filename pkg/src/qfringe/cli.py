"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 I/O failure, 4 degenerate-geometry computation error.
"""

from __future__ import annotations

import argparse
import sys

from .config import ConfigError, apply_overrides, load_config
from .diffraction import DegenerateGeometryError
from .runner import run


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfringe",
        description=(
            "Run slit-interference scans, qubit evolutions, pipeline "
            "comparisons and the verification suite from a JSON config."
        ),
    )
    parser.add_argument("--config", required=True, help="path to the JSON run configuration")
    parser.add_argument("--output", help="override the output file path")
    parser.add_argument("--format", choices=("csv", "json"), help="override the output format")
    parser.add_argument(
        "--far-field",
        action="store_true",
        help="use the far-field fringe law instead of the exact intensity",
    )
    parser.add_argument(
        "--seed", type=int, help="reserved for future stochastic features; accepted and unused"
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        config = apply_overrides(
            config,
            output_path=args.output,
            output_format=args.format,
            far_field=args.far_field,
        )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    try:
        code = run(config)
    except DegenerateGeometryError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {config.experiment} output: {config.output.path}")
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
