"""The `hinge` command line tool.

Subcommands: invariants, equivalent, canonical, standard, count, selfcheck.
Exit codes are a stable contract:

    0  success (EQUIVALENT, MATCH, all checks passed)
    1  negative verdict (NOT-EQUIVALENT, MISMATCH, a failed check)
    2  unreadable input: bad JSON, bad field, bad flag value
    3  singular matrix where an invertible one is required
    4  margin mismatch: compositions or table sums do not add up
    5  problem headers differ where they must agree
    6  an enumeration would exceed the size budget

The HINGE_BUDGET environment variable overrides the default enumeration
budget; an explicit --budget flag wins over the environment.
"""

from __future__ import annotations

import argparse
import os
import sys

from .bihinge import DimensionMatrix, MarginError, equivalent, standard_bihinge, standard_matrix
from .enumeration import (
    DEFAULT_BUDGET,
    BudgetError,
    EnumerationBudget,
    double_cosets_brute,
    predicted_coset_count,
)
from .field import PrimeField
from .linalg import SingularMatrixError
from .lpu import canonical_01
from .selfcheck import run_selfcheck
from .serialize import (
    HeaderMismatchError,
    ProblemFormatError,
    cell_records,
    check_same_header,
    dumps_json,
    invariant_report,
    load_problem,
    render_matrix_rows,
    render_report_text,
    render_standard_text,
)

EXIT_OK = 0
EXIT_DIFFERENT = 1
EXIT_FORMAT = 2
EXIT_SINGULAR = 3
EXIT_MARGIN = 4
EXIT_HEADER = 5
EXIT_BUDGET = 6


def _csv_ints(text: str) -> list:
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _csv_rows(text: str) -> list:
    return [_csv_ints(row) for row in text.split(";")]


def _resolve_budget(args) -> EnumerationBudget:
    value = getattr(args, "budget", None)
    if value is None:
        raw = os.environ.get("HINGE_BUDGET")
        if raw is not None:
            try:
                value = int(raw)
            except ValueError:
                raise ProblemFormatError(
                    f"HINGE_BUDGET must be an integer, got {raw!r}"
                ) from None
    if value is None:
        return DEFAULT_BUDGET
    if value < 1:
        raise ProblemFormatError(f"budget must be positive, got {value}")
    return EnumerationBudget(max_group_order=value, max_subspace_lattice=value)


def cmd_invariants(args) -> int:
    problem = load_problem(args.file)
    report = invariant_report(problem)
    if args.format == "json":
        print(dumps_json(report))
    else:
        print(render_report_text(report))
    return EXIT_OK


def cmd_equivalent(args) -> int:
    a = load_problem(args.file_a)
    b = load_problem(args.file_b)
    check_same_header(a, b)
    same = equivalent(a.matrix, b.matrix, a.alpha, a.beta)
    if args.format == "json":
        print(dumps_json({"equivalent": same}))
    else:
        print("EQUIVALENT" if same else "NOT-EQUIVALENT")
    return EXIT_OK if same else EXIT_DIFFERENT


def cmd_canonical(args) -> int:
    problem = load_problem(args.file)
    c = canonical_01(problem.matrix, problem.alpha, problem.beta)
    if args.format == "json":
        print(
            dumps_json(
                {
                    "modulus": problem.field.p,
                    "alpha": list(problem.alpha.parts),
                    "beta": list(problem.beta.parts),
                    "matrix": c.to_rows(),
                }
            )
        )
    else:
        print(render_matrix_rows(c.to_rows()))
    return EXIT_OK


def cmd_standard(args) -> int:
    field = PrimeField(args.q)
    d = DimensionMatrix(args.dims, args.alpha, args.beta)
    report = {
        "modulus": field.p,
        "alpha": list(d.alpha.parts),
        "beta": list(d.beta.parts),
        "matrix": standard_matrix(d, field).to_rows(),
        "dimension_matrix": d.to_rows(),
        "cells": cell_records(standard_bihinge(d, field)),
    }
    if args.format == "json":
        print(dumps_json(report))
    else:
        print(render_standard_text(report))
    return EXIT_OK


def cmd_count(args) -> int:
    budget = _resolve_budget(args)
    predicted = predicted_coset_count(args.alpha, args.beta, args.q)
    if not args.brute:
        if args.format == "json":
            print(dumps_json({"predicted": predicted}))
        else:
            print(f"predicted {predicted}")
        return EXIT_OK
    partition = double_cosets_brute(sum(args.alpha), args.q, args.alpha, args.beta, budget)
    brute = partition.num_classes
    match = brute == predicted
    if args.format == "json":
        print(dumps_json({"predicted": predicted, "brute": brute, "match": match}))
    else:
        print(f"predicted {predicted}")
        print(f"brute {brute}")
        print("MATCH" if match else "MISMATCH")
    return EXIT_OK if match else EXIT_DIFFERENT


def cmd_selfcheck(args) -> int:
    budget = _resolve_budget(args)
    ok = run_selfcheck(qs=args.q, max_n=args.max_n, budget=budget)
    print("all checks passed" if ok else "some checks FAILED")
    return EXIT_OK if ok else EXIT_DIFFERENT


def _add_format(parser):
    parser.add_argument(
        "--format",
        choices=("json", "text"),
        default="text",
        help="output as one JSON document or as human-readable text",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hinge",
        description="Relation-grid invariants of matrices over prime fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="full invariant of a problem file")
    p.add_argument("file", help="JSON problem file")
    _add_format(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("equivalent", help="decide whether two problems share a coset")
    p.add_argument("file_a", help="first JSON problem file")
    p.add_argument("file_b", help="second JSON problem file")
    _add_format(p)
    p.set_defaults(func=cmd_equivalent)

    p = sub.add_parser("canonical", help="0-1 canonical representative of a problem")
    p.add_argument("file", help="JSON problem file")
    _add_format(p)
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("standard", help="standard matrix and grid of a dimension table")
    p.add_argument(
        "--dims",
        type=_csv_rows,
        required=True,
        help="table rows as comma-separated ints, rows joined by ';'",
    )
    p.add_argument("--alpha", type=_csv_ints, required=True, help="column composition")
    p.add_argument("--beta", type=_csv_ints, required=True, help="row composition")
    p.add_argument("-q", type=int, required=True, help="field modulus (prime)")
    _add_format(p)
    p.set_defaults(func=cmd_standard)

    p = sub.add_parser("count", help="number of double cosets for given margins")
    p.add_argument("--alpha", type=_csv_ints, required=True, help="column composition")
    p.add_argument("--beta", type=_csv_ints, required=True, help="row composition")
    p.add_argument("-q", type=int, required=True, help="field modulus (prime)")
    p.add_argument("--brute", action="store_true", help="also count exhaustively and compare")
    p.add_argument("--budget", type=int, help="override both enumeration size caps")
    _add_format(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("selfcheck", help="run the verification suites")
    p.add_argument(
        "-q",
        type=_csv_ints,
        default=[2, 3],
        help="comma-separated field moduli (default 2,3)",
    )
    p.add_argument("--max-n", type=int, default=4, help="largest matrix size to test")
    p.add_argument("--budget", type=int, help="override both enumeration size caps")
    p.set_defaults(func=cmd_selfcheck)

    return parser


_EXIT_CODES = (
    (HeaderMismatchError, EXIT_HEADER),
    (ProblemFormatError, EXIT_FORMAT),
    (MarginError, EXIT_MARGIN),
    (SingularMatrixError, EXIT_SINGULAR),
    (BudgetError, EXIT_BUDGET),
    (OSError, EXIT_FORMAT),
    (ValueError, EXIT_FORMAT),
)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BudgetError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        for kind, code in _EXIT_CODES:
            if isinstance(exc, kind):
                return code
        raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
