"""Problem files and invariant reports: JSON in, JSON or desk text out."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .bihinge import BiHinge, Composition, MarginError, chi, dimension_matrix
from .field import PrimeField
from .linalg import Matrix
from .lpu import canonical_01
from .relations import LinearRelation
from .subspaces import subspace_from_generators


class ProblemFormatError(ValueError):
    """A problem file is malformed; the message names the offending field."""


class HeaderMismatchError(ValueError):
    """Two problems disagree on modulus or compositions."""


@dataclass(frozen=True)
class Problem:
    """A parsed problem: field, column and row compositions, and the matrix."""

    field: PrimeField
    alpha: Composition
    beta: Composition
    matrix: Matrix

    def header(self) -> tuple:
        return self.field.p, self.alpha.parts, self.beta.parts


def _int_list(value, name: str) -> list:
    if not isinstance(value, list) or not value:
        raise ProblemFormatError(f"field '{name}' must be a nonempty list of ints")
    out = []
    for v in value:
        if not isinstance(v, int) or isinstance(v, bool):
            raise ProblemFormatError(f"field '{name}' must contain only ints, got {v!r}")
        out.append(v)
    return out


def problem_from_dict(data: dict) -> Problem:
    """Validate and normalize one problem dict.

    Matrix entries are reduced mod the modulus here; invertibility is not
    checked, commands that need it fail on use.
    """
    if not isinstance(data, dict):
        raise ProblemFormatError("problem must be a JSON object")
    for key in ("modulus", "alpha", "beta", "matrix"):
        if key not in data:
            raise ProblemFormatError(f"field '{key}' is missing")
    modulus = data["modulus"]
    if not isinstance(modulus, int) or isinstance(modulus, bool):
        raise ProblemFormatError("field 'modulus' must be an int")
    try:
        field = PrimeField(modulus)
    except ValueError as exc:
        raise ProblemFormatError(f"field 'modulus': {exc}") from None
    alpha_parts = _int_list(data["alpha"], "alpha")
    beta_parts = _int_list(data["beta"], "beta")
    try:
        alpha = Composition(alpha_parts)
        beta = Composition(beta_parts)
    except ValueError as exc:
        raise ProblemFormatError(str(exc)) from None
    rows = data["matrix"]
    if not isinstance(rows, list) or not rows:
        raise ProblemFormatError("field 'matrix' must be a nonempty list of rows")
    n = len(rows)
    for r in rows:
        if not isinstance(r, list) or len(r) != n:
            raise ProblemFormatError(f"field 'matrix' must be square, got a row of length {len(r) if isinstance(r, list) else '?'} in {n} rows")
        for v in r:
            if not isinstance(v, int) or isinstance(v, bool):
                raise ProblemFormatError(f"field 'matrix' must contain only ints, got {v!r}")
    if alpha.n != n or beta.n != n:
        raise MarginError(
            f"matrix is {n} x {n} but alpha sums to {alpha.n} and beta to {beta.n}"
        )
    return Problem(field, alpha, beta, Matrix(field, rows))


def load_problem(path: str) -> Problem:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ProblemFormatError(f"invalid JSON in {path}: {exc}") from None
    return problem_from_dict(data)


def problem_to_dict(p: Problem) -> dict:
    return {
        "modulus": p.field.p,
        "alpha": list(p.alpha.parts),
        "beta": list(p.beta.parts),
        "matrix": p.matrix.to_rows(),
    }


def check_same_header(a: Problem, b: Problem):
    if a.header() != b.header():
        raise HeaderMismatchError(
            f"headers differ: modulus/alpha/beta {a.header()} vs {b.header()}"
        )


def cell_records(h: BiHinge) -> list:
    """JSON-ready per-cell records of a grid.

    Cells carry 1-based block indices, the RREF basis rows of the relation
    (xi coordinates first), the four subspace dimensions and the theta matrix.
    """
    cells = []
    for i, j, cell in h.cells():
        cells.append(
            {
                "i": i + 1,
                "j": j + 1,
                "dim_x": cell.dim_x,
                "dim_y": cell.dim_y,
                "basis": cell.space.basis.to_rows(),
                "ker_dim": cell.ker().dim,
                "dom_dim": cell.dom().dim,
                "indef_dim": cell.indef().dim,
                "im_dim": cell.im().dim,
                "theta": cell.theta().to_rows(),
            }
        )
    return cells


def invariant_report(problem: Problem) -> dict:
    """The full invariant of a problem as one JSON-ready dict.

    The grid is reconstructible from the report via report_to_bihinge.
    """
    h = chi(problem.matrix, problem.alpha, problem.beta)
    d = dimension_matrix(h)
    return {
        "modulus": problem.field.p,
        "alpha": list(problem.alpha.parts),
        "beta": list(problem.beta.parts),
        "dimension_matrix": d.to_rows(),
        "cells": cell_records(h),
        "canonical": canonical_01(problem.matrix, problem.alpha, problem.beta).to_rows(),
    }


def report_to_bihinge(report: dict) -> BiHinge:
    """Rebuild the relation grid from a report's basis rows."""
    field = PrimeField(report["modulus"])
    alpha = Composition(report["alpha"])
    beta = Composition(report["beta"])
    cells = {}
    for cell in report["cells"]:
        i, j = cell["i"] - 1, cell["j"] - 1
        dim_x, dim_y = cell["dim_x"], cell["dim_y"]
        rows = cell["basis"]
        if rows:
            gens = Matrix(field, rows)
        else:
            gens = Matrix.zeros(field, 0, dim_x + dim_y)
        cells[i, j] = LinearRelation(dim_x, dim_y, subspace_from_generators(gens))
    grid = [
        [cells[i, j] for j in range(len(beta))] for i in range(len(alpha))
    ]
    return BiHinge(alpha, beta, grid)


def dumps_json(data: dict) -> str:
    """Deterministic JSON: fixed insertion order, no whitespace variation."""
    return json.dumps(data, separators=(", ", ": "), sort_keys=False)


def render_matrix_rows(rows: list) -> str:
    return "\n".join(" ".join(str(v) for v in row) for row in rows)


def render_relation_rows(rows: list, dim_x: int) -> list:
    """Rows printed in the (xi ; eta) split used for desk checking."""
    out = []
    for row in rows:
        left = " ".join(str(v) for v in row[:dim_x])
        right = " ".join(str(v) for v in row[dim_x:])
        out.append(f"({left} | {right})")
    return out


def _cell_lines(cell: dict) -> list:
    lines = [
        f"chi[{cell['i']},{cell['j']}]  ker={cell['ker_dim']} dom={cell['dom_dim']} "
        f"indef={cell['indef_dim']} im={cell['im_dim']}"
    ]
    for row in render_relation_rows(cell["basis"], cell["dim_x"]):
        lines.append("  " + row)
    if not cell["basis"]:
        lines.append("  (zero relation)")
    theta = cell["theta"]
    size = len(theta)
    lines.append(f"  theta {size}x{size}" + ("" if size == 0 else ":"))
    for row in theta:
        lines.append("    " + " ".join(str(v) for v in row))
    return lines


def _header_lines(report: dict) -> list:
    return [
        f"modulus {report['modulus']}",
        "alpha " + " ".join(str(v) for v in report["alpha"]),
        "beta " + " ".join(str(v) for v in report["beta"]),
    ]


def render_report_text(report: dict) -> str:
    lines = _header_lines(report)
    lines.append("dimension matrix:")
    for row in report["dimension_matrix"]:
        lines.append("  " + " ".join(str(v) for v in row))
    for cell in report["cells"]:
        lines.extend(_cell_lines(cell))
    lines.append("canonical 0-1 matrix:")
    for row in report["canonical"]:
        lines.append("  " + " ".join(str(v) for v in row))
    return "\n".join(lines)


def render_standard_text(report: dict) -> str:
    """Text form of a standard-form report: the 0-1 matrix, then its grid."""
    lines = _header_lines(report)
    lines.append("standard matrix:")
    for row in report["matrix"]:
        lines.append("  " + " ".join(str(v) for v in row))
    lines.append("dimension matrix:")
    for row in report["dimension_matrix"]:
        lines.append("  " + " ".join(str(v) for v in row))
    for cell in report["cells"]:
        lines.extend(_cell_lines(cell))
    return "\n".join(lines)
