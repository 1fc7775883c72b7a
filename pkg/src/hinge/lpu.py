"""Lower x permutation x upper decomposition and the 0-1 canonical form.

Every invertible matrix over a field factors as l @ perm @ u with l lower
triangular, u upper triangular and perm a permutation matrix; perm is unique
and is read off the ranks of top-left submatrices.  Counting the units of
perm inside each block cut by (alpha, beta) reproduces the dimension table of
the relation grid, which gives a second, independent route to the canonical
0-1 representative of a double coset.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bihinge import Composition, DimensionMatrix, standard_matrix
from .linalg import Matrix, ShapeError, SingularMatrixError, _rref


@dataclass(frozen=True)
class LpuDecomposition:
    """Exact factors with l @ perm @ u equal to the source matrix."""

    l: Matrix
    perm: Matrix
    u: Matrix

    def product(self) -> Matrix:
        return self.l * self.perm * self.u


def rank_profile_permutation(a: Matrix) -> Matrix:
    """The permutation factor, from second differences of corner ranks.

    With r(i, j) the rank of the top-left i x j submatrix, position
    (i-1, j-1) holds a unit iff r(i,j) - r(i-1,j) - r(i,j-1) + r(i-1,j-1) = 1.
    One RREF per row prefix yields a whole row of corner ranks, because row
    operations preserve the ranks of all column prefixes.
    """
    n = a.rows
    if a.cols != n:
        raise ShapeError(f"need a square matrix, got {a.shape}")
    field = a.field
    r = np.zeros((n + 1, n + 1), dtype=np.int64)
    for i in range(1, n + 1):
        work = a.a[:i, :].copy()
        piv = _rref(work, field.p, field.inv_table())
        for j in range(1, n + 1):
            r[i, j] = sum(1 for c in piv if c < j)
    if r[n, n] != n:
        raise SingularMatrixError(f"matrix of rank {int(r[n, n])} < {n} has no permutation factor")
    perm = r[1:, 1:] - r[:-1, 1:] - r[1:, :-1] + r[:-1, :-1]
    return Matrix._new(field, np.ascontiguousarray(perm))


def lpu(a: Matrix) -> LpuDecomposition:
    """Factor an invertible matrix as l @ perm @ u.

    perm comes from the rank-profile formula; l and u are witnesses from one
    forward elimination pass (columns left to right, clearing below each pivot
    with downward row operations and to its right with rightward column
    operations).  The product is checked against a before returning.
    """
    n = a.rows
    if a.cols != n:
        raise ShapeError(f"need a square matrix, got {a.shape}")
    field = a.field
    p = field.p
    inv = field.inv_table()
    m = a.a.copy()
    e = np.eye(n, dtype=np.int64)  # accumulated row ops: m == e @ a @ f
    f = np.eye(n, dtype=np.int64)
    for c in range(n):
        nz = np.flatnonzero(m[:, c])
        if nz.size == 0:
            raise SingularMatrixError(f"column {c} dies during elimination")
        r = int(nz[0])
        v = int(m[r, c])
        if v != 1:
            m[r] = m[r] * inv[v] % p
            e[r] = e[r] * inv[v] % p
        below = nz[nz > r]
        if below.size:
            coef = m[below, c].copy()
            m[below] = (m[below] - np.outer(coef, m[r])) % p
            e[below] = (e[below] - np.outer(coef, e[r])) % p
        right = c + 1 + np.flatnonzero(m[r, c + 1 :])
        if right.size:
            coef = m[r, right].copy()
            m[:, right] = (m[:, right] - np.outer(m[:, c], coef)) % p
            f[:, right] = (f[:, right] - np.outer(f[:, c], coef)) % p
    l = Matrix._new(field, e).inverse()
    u = Matrix._new(field, f).inverse()
    perm = rank_profile_permutation(a)
    if l * perm * u != a:
        raise RuntimeError("elimination witnesses disagree with the rank-profile permutation")
    return LpuDecomposition(l, perm, u)


def perm_block_counts(perm: Matrix, alpha, beta) -> DimensionMatrix:
    """Units of a permutation matrix per (column block i, row block j) cell."""
    alpha = Composition(alpha)
    beta = Composition(beta)
    if perm.shape != (beta.n, alpha.n):
        raise ShapeError(f"permutation shape {perm.shape} does not match ({beta.n}, {alpha.n})")
    entries = []
    for i in range(len(alpha)):
        c0, c1 = alpha.block(i)
        row = []
        for j in range(len(beta)):
            r0, r1 = beta.block(j)
            row.append(int(perm.a[r0:r1, c0:c1].sum()))
        entries.append(row)
    return DimensionMatrix(entries, alpha, beta)


def canonical_01(a: Matrix, alpha, beta) -> Matrix:
    """The canonical 0-1 double coset representative of an invertible matrix.

    Equal to standard_matrix of the relation grid's dimension table; computed
    here purely from the permutation factor's block unit counts.
    """
    dec = lpu(a)
    d = perm_block_counts(dec.perm, alpha, beta)
    return standard_matrix(d, a.field)
