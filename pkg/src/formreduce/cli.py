"""Command line client for the formreduce operations.

Subcommands: covariant, reduce, classify, bounds, selftest.  Form input is
a JSON file path or "-" for standard input.  Exit codes: 0 success, 1 for
input or validation problems, 2 for solver non-convergence, 3 when the
selftest sweep finds a bound violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import ops
from .errors import (
    FormReduceError,
    MalformedInput,
    NoConvergence,
    NonConvergentRoots,
)
from .serialization import parse_form

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NO_CONVERGENCE = 2
EXIT_VIOLATION = 3


def _read_input(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(result, json_mode):
    if json_mode:
        print(json.dumps(result, indent=2, sort_keys=True))
        return
    for line in _plain_lines("", result):
        print(line)


def _plain_lines(prefix, value):
    """Flatten to `key value` lines with 15 significant digits."""
    if isinstance(value, dict):
        for key in sorted(value):
            yield from _plain_lines(f"{prefix}{key}.", value[key])
    elif isinstance(value, list):
        for i, item in enumerate(value):
            yield from _plain_lines(f"{prefix}{i}.", item)
    else:
        yield f"{prefix.rstrip('.')} {_fmt(value)}"


def _fmt(x):
    if isinstance(x, float):
        return f"{x:.14e}"
    return str(x)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="formreduce",
        description="Covariant points, reduction, and bound verification "
                    "for real binary forms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_input=True):
        if needs_input:
            p.add_argument("input", help='JSON form spec path, or "-" for stdin')
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--json", dest="json_mode", action="store_true",
                          default=True, help="machine-readable output (default)")
        mode.add_argument("--plain", dest="json_mode", action="store_false",
                          help="one `key value` line per result")

    p = sub.add_parser("covariant", help="compute the covariant point")
    add_common(p)
    p.add_argument("--tol", type=float, default=1e-11)
    p.add_argument("--max-iter", type=int, default=100)

    p = sub.add_parser("reduce", help="reduce a form into the fundamental domain")
    add_common(p)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--tol", type=float, default=1e-11)
    p.add_argument("--max-steps", type=int, default=64)
    p.add_argument("--classic", action="store_true",
                   help="force the classical translate/invert loop")

    p = sub.add_parser("classify", help="classify the root-cluster configuration")
    add_common(p)
    p.add_argument("--eps", type=float, default=None)

    p = sub.add_parser("bounds", help="evaluate all applicable bound reports")
    add_common(p)
    p.add_argument("--eps", type=float, default=None)

    p = sub.add_parser("selftest", help="randomized bound-verification sweep")
    add_common(p, needs_input=False)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "selftest":
            result = ops.run_sweep(args.count, args.seed)
            _emit(result, args.json_mode)
            return EXIT_OK if result["ok"] else EXIT_VIOLATION

        try:
            text = _read_input(args.input)
        except OSError as exc:
            print(f"error: cannot read input: {exc}", file=sys.stderr)
            return EXIT_INPUT
        form = parse_form(text)

        if args.command == "covariant":
            result = ops.run_covariant(form, tol=args.tol, max_iter=args.max_iter)
        elif args.command == "reduce":
            result = ops.run_reduce(
                form,
                eps=args.eps,
                max_steps=args.max_steps,
                classic=args.classic,
                tol=args.tol,
            )
        elif args.command == "classify":
            result = ops.run_classify(form, eps=args.eps)
        elif args.command == "bounds":
            result = ops.run_bounds(form, eps=args.eps)
        else:  # pragma: no cover - argparse enforces the choices
            parser.error(f"unknown command {args.command}")
        _emit(result, args.json_mode)
        return EXIT_OK
    except (NoConvergence, NonConvergentRoots) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FormReduceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
