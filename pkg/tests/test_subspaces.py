"""Subspace calculus, cross-checked by exhaustive vector enumeration.

Every oracle here materializes subspaces as Python sets of int tuples and
computes sums, intersections and preimages pointwise, so any systematic error
in the echelon-form code would have to reproduce brute-force set algebra to
slip through.
"""

import random
from itertools import product

import numpy as np
import pytest

from hinge.field import PrimeField
from hinge.linalg import Matrix, ShapeError
from hinge.subspaces import (
    Subspace,
    coordinate_project,
    coordinate_subspace,
    equations_of,
    kernel_basis,
    preimage,
    subspace_from_generators,
    subspace_intersect,
    subspace_sum,
)


def span_set(rows, p, n):
    """All linear combinations of the given rows, as a set of tuples."""
    out = set()
    rows = [tuple(v % p for v in row) for row in rows]
    for coeffs in product(range(p), repeat=len(rows)):
        v = [0] * n
        for c, row in zip(coeffs, rows):
            for k in range(n):
                v[k] = (v[k] + c * row[k]) % p
        out.add(tuple(v))
    return out


def as_set(s):
    return {tuple(int(x) for x in v) for v in s.vectors()}


def random_generators(rng, p, rows, n):
    return [[rng.randrange(p) for _ in range(n)] for _ in range(rows)]


def test_zero_and_full():
    f = PrimeField(3)
    z = Subspace.zero(f, 4)
    assert z.dim == 0 and z.ambient_dim == 4
    assert as_set(z) == {(0, 0, 0, 0)}
    full = Subspace.full(f, 2)
    assert full.dim == 2
    assert as_set(full) == set(product(range(3), repeat=2))


def test_constructor_requires_canonical_basis():
    f = PrimeField(2)
    Subspace(Matrix(f, [[1, 0, 1], [0, 1, 0]]))  # fine: already reduced
    with pytest.raises(ValueError):
        Subspace(Matrix(f, [[1, 1, 0], [1, 0, 0]]))  # pivot column not cleared
    with pytest.raises(ValueError):
        Subspace(Matrix(f, [[0, 0, 0]]))  # zero row


def test_span_matches_enumeration():
    rng = random.Random(23)
    for p in (2, 3):
        f = PrimeField(p)
        for _ in range(30):
            n = rng.randint(1, 4)
            gens = random_generators(rng, p, rng.randint(0, 3), n)
            s = subspace_from_generators(Matrix(f, gens) if gens else Matrix.zeros(f, 0, n))
            want = span_set(gens, p, n)
            assert as_set(s) == want
            assert len(want) == p ** s.dim
            for v in product(range(p), repeat=n):
                assert s.contains(v) == (v in want)


def test_contains_space():
    f = PrimeField(2)
    big = subspace_from_generators(Matrix(f, [[1, 0, 0], [0, 1, 0]]))
    small = subspace_from_generators(Matrix(f, [[1, 1, 0]]))
    other = subspace_from_generators(Matrix(f, [[0, 0, 1]]))
    assert big.contains_space(small)
    assert not big.contains_space(other)
    assert big.contains_space(Subspace.zero(f, 3))


def test_sum_and_intersection_exhaustive():
    rng = random.Random(29)
    for p in (2, 3):
        f = PrimeField(p)
        n = 4 if p == 2 else 3
        for _ in range(30):
            g1 = random_generators(rng, p, rng.randint(0, 3), n)
            g2 = random_generators(rng, p, rng.randint(0, 3), n)
            s = subspace_from_generators(Matrix(f, g1) if g1 else Matrix.zeros(f, 0, n))
            t = subspace_from_generators(Matrix(f, g2) if g2 else Matrix.zeros(f, 0, n))
            set_s, set_t = span_set(g1, p, n), span_set(g2, p, n)
            pointwise_sum = {
                tuple((u[k] + v[k]) % p for k in range(n)) for u in set_s for v in set_t
            }
            assert as_set(subspace_sum(s, t)) == pointwise_sum
            assert as_set(subspace_intersect(s, t)) == set_s & set_t
            # modular law sanity: dim(s) + dim(t) = dim(s+t) + dim(s int t)
            assert s.dim + t.dim == subspace_sum(s, t).dim + subspace_intersect(s, t).dim


def test_equations_cut_out_the_space():
    rng = random.Random(31)
    for p in (2, 3):
        f = PrimeField(p)
        n = 4 if p == 2 else 3
        for _ in range(20):
            gens = random_generators(rng, p, rng.randint(0, 3), n)
            s = subspace_from_generators(Matrix(f, gens) if gens else Matrix.zeros(f, 0, n))
            eqs = equations_of(s)
            assert eqs.rows == n - s.dim
            members = as_set(s)
            for v in product(range(p), repeat=n):
                lhs = (eqs.a @ np.array(v, dtype=np.int64)) % p
                assert (not lhs.any()) == (v in members)
            assert kernel_basis(eqs) == s


def test_kernel_basis_exhaustive():
    rng = random.Random(37)
    for p in (2, 3):
        f = PrimeField(p)
        for _ in range(20):
            m_rows, n = rng.randint(1, 3), rng.randint(1, 4)
            m = Matrix(f, random_generators(rng, p, m_rows, n))
            ker = kernel_basis(m)
            want = {
                v
                for v in product(range(p), repeat=n)
                if not ((m.a @ np.array(v, dtype=np.int64)) % p).any()
            }
            assert as_set(ker) == want


def test_preimage_exhaustive():
    rng = random.Random(41)
    for p in (2, 3):
        f = PrimeField(p)
        for _ in range(20):
            m_rows, n = rng.randint(1, 3), rng.randint(1, 3)
            a = Matrix(f, random_generators(rng, p, m_rows, n))
            gens = random_generators(rng, p, rng.randint(0, 2), m_rows)
            s = subspace_from_generators(
                Matrix(f, gens) if gens else Matrix.zeros(f, 0, m_rows)
            )
            members = as_set(s)
            want = {
                v
                for v in product(range(p), repeat=n)
                if tuple(int(x) for x in (a.a @ np.array(v, dtype=np.int64)) % p) in members
            }
            assert as_set(preimage(a, s)) == want


def test_preimage_shape_check():
    f = PrimeField(2)
    a = Matrix(f, [[1, 0], [0, 1], [1, 1]])
    with pytest.raises(ShapeError):
        preimage(a, Subspace.full(f, 2))


def test_coordinate_subspace_and_project():
    f = PrimeField(3)
    s = coordinate_subspace(f, 4, [2, 0])
    assert s.basis.to_rows() == [[1, 0, 0, 0], [0, 0, 1, 0]]
    t = subspace_from_generators(Matrix(f, [[1, 2, 0, 1], [0, 1, 1, 0]]))
    proj = coordinate_project(t, [0, 1])
    want = {tuple(v[:2]) for v in (tuple(int(x) for x in w) for w in t.vectors())}
    assert as_set(proj) == want


def test_coordinate_errors():
    f = PrimeField(2)
    with pytest.raises(IndexError):
        coordinate_subspace(f, 3, [3])
    with pytest.raises(IndexError):
        coordinate_subspace(f, 3, [0, 0])


def test_equality_ignores_generator_choice():
    f = PrimeField(5)
    s = subspace_from_generators(Matrix(f, [[1, 2, 3], [2, 4, 1]]))
    t = subspace_from_generators(Matrix(f, [[3, 6, 4], [4, 8, 2]]))  # same span
    assert s == t and hash(s) == hash(t)
