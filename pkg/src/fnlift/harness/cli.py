"""Command line entry point: ``verify --model PATH | --generate KIND,N,DEGREE,SEED``.

Exit codes: 0 all rows pass (or skip), 1 some row FAIL, 2 only closed-formula
rows FAIL-FORMULA, 3 usage or schema error.  ``FNLIFT_SEED`` sets the
default sampling seed; an explicit ``--seed`` wins.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .model import GENERATOR_KINDS, SchemaError, generate, load_model
from .report import EXIT_USAGE, emit_report
from .runner import run_suites
from .suites import SUITES, select

__all__ = ["main", "SEED_ENV"]

SEED_ENV = "FNLIFT_SEED"


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; this package reserves 2 for formula discrepancies."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _generate_arg(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected KIND,N,DEGREE,SEED")
    kind = parts[0].strip()
    if kind not in GENERATOR_KINDS:
        raise argparse.ArgumentTypeError(f"unknown kind {kind!r}; expected one of {', '.join(GENERATOR_KINDS)}")
    try:
        n, degree, seed = (int(p) for p in parts[1:])
    except ValueError:
        raise argparse.ArgumentTypeError("N, DEGREE and SEED must be integers") from None
    return kind, n, degree, seed


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SchemaError(f"${SEED_ENV}", f"not an integer: {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="verify", description="Verify L-structure identities on a polynomial model.")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--model", type=Path, help="ModelSpec JSON file")
    src.add_argument("--generate", type=_generate_arg, metavar="KIND,N,DEGREE,SEED", help="built-in model")
    p.add_argument("--suites", default="all", help=f"comma-separated suites or statement ids, or 'all' ({', '.join(SUITES)})")
    p.add_argument("--backend", choices=("exact", "points"), default="exact")
    p.add_argument("--samples", type=int, default=100, help="sample points for the points backend")
    p.add_argument("--seed", type=int, default=None, help=f"sampling seed (default ${SEED_ENV} or 0)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.samples < 1:
            raise SchemaError("--samples", "must be a positive integer")
        seed = args.seed if args.seed is not None else _default_seed()
        select(args.suites)
        model = load_model(args.model) if args.model is not None else generate(*args.generate)
    except (ValueError, OSError) as exc:
        print(f"verify: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = run_suites(model, args.suites, args.backend, args.samples, seed)
    text, code = emit_report(report, args.format)
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
