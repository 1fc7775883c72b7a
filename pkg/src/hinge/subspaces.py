"""Subspaces of GF(p)^d with canonical RREF bases and the calculus on them."""

from __future__ import annotations

from itertools import product

import numpy as np

from .field import PrimeField
from .linalg import Matrix, ShapeError, _kernel_rows, _rref


class Subspace:
    """A linear subspace of GF(p)^d, stored as its unique RREF basis.

    The basis matrix has no zero rows, unit pivots with strictly increasing
    pivot columns, and zeros above and below each pivot.  Equality of
    subspaces is therefore plain equality of basis matrices.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, basis: Matrix, ambient_dim: int = None):
        if ambient_dim is None:
            ambient_dim = basis.cols
        if basis.cols != ambient_dim:
            raise ShapeError(f"basis width {basis.cols} != ambient {ambient_dim}")
        if not _is_rref_basis(basis.a):
            raise ValueError("basis is not a reduced row echelon basis without zero rows")
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def _trusted(cls, basis: Matrix) -> "Subspace":
        s = object.__new__(cls)
        s.ambient_dim = basis.cols
        s.basis = basis
        return s

    @classmethod
    def zero(cls, field: PrimeField, ambient_dim: int) -> "Subspace":
        return cls._trusted(Matrix.zeros(field, 0, ambient_dim))

    @classmethod
    def full(cls, field: PrimeField, ambient_dim: int) -> "Subspace":
        return cls._trusted(Matrix.identity(field, ambient_dim))

    @property
    def field(self) -> PrimeField:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.rows

    def pivots(self) -> tuple:
        return tuple(int(np.argmax(row != 0)) for row in self.basis.a)

    def contains(self, vector) -> bool:
        p = self.field.p
        v = np.array(vector, dtype=np.int64).reshape(-1) % p
        if v.shape[0] != self.ambient_dim:
            raise ShapeError(f"vector length {v.shape[0]} != ambient {self.ambient_dim}")
        for row, c in zip(self.basis.a, self.pivots()):
            if v[c]:
                v = (v - v[c] * row) % p
        return not v.any()

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis.a)

    def vectors(self):
        """Iterate every vector, coefficient tuples in lexicographic order."""
        p = self.field.p
        b = self.basis.a
        for coeffs in product(range(p), repeat=self.dim):
            yield (np.array(coeffs, dtype=np.int64) @ b) % p

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        rows = "; ".join(" ".join(str(int(v)) for v in row) for row in self.basis.a)
        return f"Subspace(GF({self.field.p})^{self.ambient_dim}, [{rows}])"


def _is_rref_basis(arr: np.ndarray) -> bool:
    last = -1
    for i in range(arr.shape[0]):
        nz = np.flatnonzero(arr[i])
        if nz.size == 0:
            return False
        c = int(nz[0])
        if c <= last or arr[i, c] != 1:
            return False
        if np.count_nonzero(arr[:, c]) != 1:
            return False
        last = c
    return True


def _span_rows(field: PrimeField, rows: np.ndarray) -> Subspace:
    arr = rows.copy() if rows.flags.writeable is False else rows
    piv = _rref(arr, field.p, field.inv_table())
    basis = np.ascontiguousarray(arr[: len(piv)])
    return Subspace._trusted(Matrix._new(field, basis))


def subspace_from_generators(generators: Matrix, ambient_dim: int = None) -> Subspace:
    """Span of the rows of a generator matrix; zero rows are harmless."""
    if ambient_dim is not None and generators.cols != ambient_dim:
        raise ShapeError(f"generator width {generators.cols} != ambient {ambient_dim}")
    return _span_rows(generators.field, generators.a.copy())


def kernel_basis(m: Matrix) -> Subspace:
    """The solution space {x : m @ x = 0} as a canonical Subspace."""
    rows = _kernel_rows(m.a, m.field.p, m.field.inv_table())
    return _span_rows(m.field, rows)


def equations_of(s: Subspace) -> Matrix:
    """A full set of linear equations cutting out s: kernel_basis(result) == s."""
    rows = _kernel_rows(s.basis.a, s.field.p, s.field.inv_table())
    piv = _rref(rows, s.field.p, s.field.inv_table())
    return Matrix._new(s.field, np.ascontiguousarray(rows[: len(piv)]))


def subspace_sum(s: Subspace, t: Subspace) -> Subspace:
    if s.ambient_dim != t.ambient_dim or s.field != t.field:
        raise ShapeError("subspace_sum needs a common ambient space")
    return _span_rows(s.field, np.concatenate([s.basis.a, t.basis.a], axis=0))


def subspace_intersect(s: Subspace, t: Subspace) -> Subspace:
    """Intersection by stacking the equation systems of both spaces."""
    if s.ambient_dim != t.ambient_dim or s.field != t.field:
        raise ShapeError("subspace_intersect needs a common ambient space")
    eqs = np.concatenate([equations_of(s).a, equations_of(t).a], axis=0)
    rows = _kernel_rows(eqs, s.field.p, s.field.inv_table())
    return _span_rows(s.field, rows)


def preimage(a: Matrix, s: Subspace) -> Subspace:
    """{x : a @ x in s}, the preimage of s under the matrix a."""
    if a.rows != s.ambient_dim:
        raise ShapeError(f"matrix maps into dim {a.rows}, subspace lives in {s.ambient_dim}")
    eqs = (equations_of(s).a @ a.a) % a.field.p
    rows = _kernel_rows(eqs, a.field.p, a.field.inv_table())
    return _span_rows(a.field, rows)


def _check_coords(coords, ambient_dim: int) -> list:
    coords = [int(c) for c in coords]
    seen = set()
    for c in coords:
        if not 0 <= c < ambient_dim:
            raise IndexError(f"coordinate {c} outside ambient dimension {ambient_dim}")
        if c in seen:
            raise IndexError(f"coordinate {c} repeated")
        seen.add(c)
    return coords


def coordinate_project(s: Subspace, coords) -> Subspace:
    """Image of s under the projection onto the listed coordinates."""
    coords = _check_coords(coords, s.ambient_dim)
    return _span_rows(s.field, np.ascontiguousarray(s.basis.a[:, coords]))


def coordinate_subspace(field: PrimeField, ambient_dim: int, coords) -> Subspace:
    """Span of the standard basis vectors e_c for c in coords."""
    coords = sorted(_check_coords(coords, ambient_dim))
    arr = np.zeros((len(coords), ambient_dim), dtype=np.int64)
    for k, c in enumerate(coords):
        arr[k, c] = 1
    return Subspace._trusted(Matrix._new(field, arr))
