"""Dense exact matrices over GF(p) with reduced row echelon machinery.

Entries live in immutable int64 numpy arrays, always reduced mod p.  All
routines are exact: there is no floating point anywhere in this package.
"""

from __future__ import annotations

import numpy as np

from .field import FieldElement, PrimeField


class ShapeError(ValueError):
    """Operands have incompatible shapes."""


class SingularMatrixError(ValueError):
    """A square matrix expected to be invertible is not."""


def _as_reduced(field: PrimeField, data) -> np.ndarray:
    arr = np.array(data, dtype=np.int64)
    if arr.ndim != 2:
        raise ShapeError(f"matrix data must be 2-dimensional, got ndim={arr.ndim}")
    return arr % field.p


class Matrix:
    """An immutable rows x cols matrix over a PrimeField.

    Matrices hash by modulus, shape and entry bytes, so they can seed sets and
    dicts during exhaustive enumeration.  The raw array is exposed as .a for
    read-only numpy work; it is flagged unwriteable.
    """

    __slots__ = ("field", "a")

    def __init__(self, field: PrimeField, data):
        self.field = field
        arr = _as_reduced(field, data)
        arr.flags.writeable = False
        self.a = arr

    @classmethod
    def _new(cls, field: PrimeField, arr: np.ndarray) -> "Matrix":
        # Trusted path: arr is int64, already reduced, ownership transfers here.
        m = object.__new__(cls)
        m.field = field
        arr.flags.writeable = False
        m.a = arr
        return m

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "Matrix":
        return cls._new(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int) -> "Matrix":
        return cls._new(field, np.zeros((rows, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple:
        return self.a.shape

    def __getitem__(self, ij) -> int:
        i, j = ij
        return int(self.a[i, j])

    def element(self, i: int, j: int) -> FieldElement:
        return FieldElement(int(self.a[i, j]), self.field)

    def to_rows(self) -> list:
        return [[int(v) for v in row] for row in self.a]

    def row(self, i: int) -> np.ndarray:
        return self.a[i]

    def transpose(self) -> "Matrix":
        return Matrix._new(self.field, np.ascontiguousarray(self.a.T))

    def _check_field(self, other: "Matrix"):
        if self.field != other.field:
            raise ValueError(f"mixed fields {self.field} and {other.field}")

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_field(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix._new(self.field, (self.a @ other.a) % self.field.p)

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._new(self.field, (self.a + other.a) % self.field.p)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix._new(self.field, (self.a - other.a) % self.field.p)

    def __neg__(self):
        return Matrix._new(self.field, (-self.a) % self.field.p)

    def is_zero(self) -> bool:
        return not self.a.any()

    def inverse(self) -> "Matrix":
        """Exact inverse via Gauss-Jordan on the augmented matrix."""
        n = self.rows
        if n != self.cols:
            raise ShapeError(f"only square matrices invert, got {self.shape}")
        aug = np.concatenate([self.a, np.eye(n, dtype=np.int64)], axis=1)
        piv = _rref(aug, self.field.p, self.field.inv_table(), pivot_limit=n)
        if len(piv) != n:
            raise SingularMatrixError(f"matrix of rank {len(piv)} < {n} over {self.field}")
        return Matrix._new(self.field, np.ascontiguousarray(aug[:, n:]))

    def rank(self) -> int:
        arr = self.a.copy()
        return len(_rref(arr, self.field.p, self.field.inv_table()))

    def rref(self) -> tuple:
        """Reduced row echelon form.  Returns (matrix, pivot column tuple)."""
        arr = self.a.copy()
        piv = _rref(arr, self.field.p, self.field.inv_table())
        return Matrix._new(self.field, arr), tuple(piv)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and np.array_equal(self.a, other.a)
        )

    def __hash__(self):
        return hash((self.field.p, self.shape, self.a.tobytes()))

    def __repr__(self):
        body = "; ".join(" ".join(str(int(v)) for v in row) for row in self.a)
        return f"Matrix(GF({self.field.p}), [{body}])"


def _rref(arr: np.ndarray, p: int, inv: list, pivot_limit: int = None) -> list:
    """In-place Gauss-Jordan reduction mod p.  Returns the pivot column list.

    Pivot search scans columns left to right and takes the first nonzero entry
    at or below the current row, so the result is the canonical RREF.  When
    pivot_limit is given, columns past it never host pivots (they ride along as
    augmented right-hand sides).
    """
    rows, cols = arr.shape
    limit = cols if pivot_limit is None else pivot_limit
    pivots = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.flatnonzero(arr[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            arr[[r, i]] = arr[[i, r]]
        v = int(arr[r, c])
        if v != 1:
            arr[r] = arr[r] * inv[v] % p
        col = arr[:, c]
        sel = np.flatnonzero(col)
        sel = sel[sel != r]
        if sel.size:
            arr[sel] = (arr[sel] - np.outer(col[sel], arr[r])) % p
        pivots.append(c)
        r += 1
    return pivots


def _kernel_rows(arr: np.ndarray, p: int, inv: list) -> np.ndarray:
    """Rows spanning {x : arr @ x = 0}.  Not canonicalized; callers rref."""
    rows, cols = arr.shape
    work = arr % p
    piv = _rref(work, p, inv)
    pivset = set(piv)
    free = [c for c in range(cols) if c not in pivset]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for r, c in enumerate(piv):
            out[k, c] = -int(work[r, f]) % p
    return out


def rref(m: Matrix) -> tuple:
    return m.rref()


def rank(m: Matrix) -> int:
    return m.rank()


def hstack(*ms: Matrix) -> Matrix:
    field = ms[0].field
    n = ms[0].rows
    for m in ms[1:]:
        if m.field != field or m.rows != n:
            raise ShapeError("hstack needs one field and a common row count")
    return Matrix._new(field, np.concatenate([m.a for m in ms], axis=1))


def vstack(*ms: Matrix) -> Matrix:
    field = ms[0].field
    n = ms[0].cols
    for m in ms[1:]:
        if m.field != field or m.cols != n:
            raise ShapeError("vstack needs one field and a common column count")
    return Matrix._new(field, np.concatenate([m.a for m in ms], axis=0))


def solve_columns(a: Matrix, b: Matrix) -> Matrix:
    """Solve a @ x = b column by column, zeroing every free variable.

    The free-variable convention makes the solution deterministic, which the
    normal form construction relies on.  Raises ValueError when some column is
    inconsistent.
    """
    if a.rows != b.rows:
        raise ShapeError(f"cannot solve {a.shape} against rhs {b.shape}")
    n = a.cols
    aug = np.concatenate([a.a, b.a], axis=1)
    piv = _rref(aug, a.field.p, a.field.inv_table(), pivot_limit=n)
    tail = aug[len(piv):, n:]
    if tail.size and tail.any():
        bad = sorted(int(j) for j in np.unique(np.nonzero(tail)[1]))
        raise ValueError(f"inconsistent system for rhs column(s) {bad}")
    x = np.zeros((n, b.cols), dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = aug[r, n:]
    return Matrix._new(a.field, x)
