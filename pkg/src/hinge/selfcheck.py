"""Randomized and exhaustive verification suites behind `hinge selfcheck`.

Each suite returns (ok, detail) and is deterministic for a given seed, so a
selfcheck run is reproducible bit for bit.  The acceptance tests drive the
same functions at their contractual sizes.
"""

from __future__ import annotations

import random

import numpy as np

from .bihinge import (
    Composition,
    check_axioms,
    chi,
    chi_cell,
    dimension_matrix,
    hinge_act,
    normalize,
    standard_bihinge,
    standard_matrix,
)
from .enumeration import (
    DEFAULT_BUDGET,
    EnumerationBudget,
    _partition_labels,
    all_bihinges_brute,
    contingency_tables,
    double_cosets_brute,
    enum_gl,
    gl_order,
    predicted_coset_count,
    stab_order_formula,
    stabilizer_brute,
    t_generators,
)
from .field import PrimeField
from .linalg import Matrix
from .lpu import lpu, perm_block_counts, canonical_01


def random_matrix(field: PrimeField, rows: int, cols: int, rng: random.Random) -> Matrix:
    arr = np.array(
        [[rng.randrange(field.p) for _ in range(cols)] for _ in range(rows)],
        dtype=np.int64,
    ).reshape(rows, cols)
    return Matrix._new(field, arr)


def random_invertible(field: PrimeField, n: int, rng: random.Random) -> Matrix:
    while True:
        m = random_matrix(field, n, n, rng)
        if m.rank() == n:
            return m


def random_composition(n: int, rng: random.Random) -> Composition:
    parts = []
    run = 1
    for _ in range(n - 1):
        if rng.random() < 0.5:
            parts.append(run)
            run = 1
        else:
            run += 1
    parts.append(run)
    return Composition(parts)


def random_unitriangular(comp, field: PrimeField, rng: random.Random, lower: bool) -> Matrix:
    """Uniform element of the block strictly triangular group."""
    comp = Composition(comp)
    arr = np.eye(comp.n, dtype=np.int64)
    for i in range(len(comp)):
        r0, r1 = comp.block(i)
        for j in range(len(comp)):
            if (j < i) if lower else (j > i):
                c0, c1 = comp.block(j)
                for r in range(r0, r1):
                    for c in range(c0, c1):
                        arr[r, c] = rng.randrange(field.p)
    return Matrix._new(field, arr)


def random_block_triangular(comp, field: PrimeField, rng: random.Random, lower: bool) -> Matrix:
    """Random element of the full block triangular group (invertible blocks)."""
    comp = Composition(comp)
    m = random_unitriangular(comp, field, rng, lower)
    arr = m.a.copy()
    for i in range(len(comp)):
        lo, hi = comp.block(i)
        blk = random_invertible(field, hi - lo, rng)
        arr[lo:hi, lo:hi] = blk.a
    return Matrix._new(field, arr)


def all_compositions(n: int) -> list:
    """All 2^(n-1) compositions of n, by ascending cut sets."""
    out = []
    for mask in range(1 << (n - 1)):
        parts = []
        run = 1
        for k in range(n - 1):
            if mask >> k & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(Composition(parts))
    return out


def _random_setup(qs, max_n, rng):
    q = rng.choice(list(qs))
    field = PrimeField(q)
    n = rng.randint(1, max_n)
    alpha = random_composition(n, rng)
    beta = random_composition(n, rng)
    a = random_invertible(field, n, rng)
    return field, n, alpha, beta, a


def check_invariance(qs=(2, 3, 5), max_n=6, trials=200, seed=101) -> tuple:
    """chi is unchanged by triangular moves, each side alone and jointly."""
    rng = random.Random(seed)
    for t in range(trials):
        field, n, alpha, beta, a = _random_setup(qs, max_n, rng)
        d = random_unitriangular(beta, field, rng, lower=True)
        c = random_unitriangular(alpha, field, rng, lower=False)
        base = chi(a, alpha, beta)
        if chi(d * a, alpha, beta) != base:
            return False, f"left move changed the grid at trial {t}"
        if chi(a * c, alpha, beta) != base:
            return False, f"right move changed the grid at trial {t}"
        if chi(d * a * c, alpha, beta) != base:
            return False, f"joint move changed the grid at trial {t}"
    return True, f"{trials} random triples over q in {tuple(qs)}, n <= {max_n}"


def check_axiom_soundness(qs=(2, 3, 5), max_n=6, trials=200, seed=202) -> tuple:
    """Every computed grid satisfies the gluing axioms."""
    rng = random.Random(seed)
    for t in range(trials):
        field, n, alpha, beta, a = _random_setup(qs, max_n, rng)
        report = check_axioms(chi(a, alpha, beta))
        if not report:
            return False, f"trial {t}: {'; '.join(report.violations)}"
    return True, f"{trials} random grids over q in {tuple(qs)}, n <= {max_n}"


_MARGIN_SETS = ((1, 1), (2,), (2, 1), (1, 2), (1, 1, 1))


def check_canonical_consistency(qs=(2, 3)) -> tuple:
    """chi of the standard 0-1 matrix equals the standard grid, per table."""
    checked = 0
    for q in qs:
        field = PrimeField(q)
        for alpha in _MARGIN_SETS:
            for beta in _MARGIN_SETS:
                if sum(alpha) != sum(beta):
                    continue
                for d in contingency_tables(alpha, beta):
                    std = standard_matrix(d, field)
                    if chi(std, alpha, beta) != standard_bihinge(d, field):
                        return False, f"table {d.to_rows()} over GF({q})"
                    checked += 1
    return True, f"{checked} dimension tables over q in {tuple(qs)}"


def _grid_cell_ids(elements, n, cuts):
    """Intern every cut-rectangle cell of every matrix to a small int id."""
    ids = np.empty((len(elements), len(cuts)), dtype=np.int64)
    intern = {}
    for idx, m in enumerate(elements):
        kernels = {}
        for k, (cl, ch, rl, rh) in enumerate(cuts):
            rel = chi_cell(m, cl, ch, rl, rh, _kernels=kernels)
            key = rel.space.basis.a.tobytes()
            cid = intern.get(key)
            if cid is None:
                cid = len(intern)
                intern[key] = cid
            ids[idx, k] = cid
    return ids


def check_completeness(n: int, q: int, budget: EnumerationBudget = None) -> tuple:
    """Equal grids iff same double coset, for every composition pair of n.

    Enumerates GL(n, q) once, computes every cut-rectangle cell of every
    element once, then checks the grid partition against the closure partition
    for all pairs (alpha, beta).
    """
    budget = budget or DEFAULT_BUDGET
    elements = list(enum_gl(n, q, budget))
    arrays = [m.a for m in elements]
    comps = all_compositions(n)
    cuts = [
        (cl, ch, rl, rh)
        for cl in range(n)
        for ch in range(cl + 1, n + 1)
        for rl in range(n)
        for rh in range(rl + 1, n + 1)
    ]
    cut_index = {cut: k for k, cut in enumerate(cuts)}
    ids = _grid_cell_ids(elements, n, cuts)
    pairs = 0
    classes_seen = 0
    for alpha in comps:
        right = [g.a for g in t_generators(alpha, q, lower=False)]
        sel_cols = [alpha.block(i) for i in range(len(alpha))]
        for beta in comps:
            left = [g.a for g in t_generators(beta, q, lower=True)]
            labels, nclasses = _partition_labels(arrays, left, right, q)
            sel = [
                cut_index[cl, ch, rl, rh]
                for cl, ch in sel_cols
                for rl, rh in (beta.block(j) for j in range(len(beta)))
            ]
            sub = ids[:, sel]
            by_label = {}
            grid_keys = set()
            for idx in range(len(elements)):
                gkey = sub[idx].tobytes()
                grid_keys.add(gkey)
                prev = by_label.setdefault(labels[idx], gkey)
                if prev != gkey:
                    return False, (
                        f"alpha={alpha.parts} beta={beta.parts}: one coset, two grids"
                    )
            if len(grid_keys) != nclasses:
                return False, (
                    f"alpha={alpha.parts} beta={beta.parts}: "
                    f"{nclasses} cosets but {len(grid_keys)} grids"
                )
            pairs += 1
            classes_seen += nclasses
    return True, (
        f"GL({n},{q}): {len(elements)} elements, {pairs} composition pairs, "
        f"{classes_seen} class checks"
    )


def check_surjectivity(q: int, budget: EnumerationBudget = None) -> tuple:
    """Every axiom-satisfying grid for alpha = beta = (1,1) is a chi image."""
    budget = budget or DEFAULT_BUDGET
    alpha = beta = (1, 1)
    grids = all_bihinges_brute(alpha, beta, q, budget)
    images = {chi(m, alpha, beta) for m in enum_gl(2, q, budget)}
    if set(grids) != images:
        return False, f"GF({q}): {len(grids)} grids vs {len(images)} images"
    expected = predicted_coset_count(alpha, beta, q)
    if len(grids) != expected:
        return False, f"GF({q}): {len(grids)} grids vs predicted {expected}"
    return True, f"GF({q}): all {len(grids)} grids realized"


def check_stabilizers(qs=(2, 3), budget: EnumerationBudget = None) -> tuple:
    """Brute stabilizer orders match the closed formula on small margins."""
    budget = budget or DEFAULT_BUDGET
    margins = ((1, 1), (2,), (2, 1), (1, 1, 1))
    checked = 0
    for q in qs:
        for alpha in margins:
            for beta in margins:
                if sum(alpha) != sum(beta):
                    continue
                for d in contingency_tables(alpha, beta):
                    brute = stabilizer_brute(d, q, budget)
                    formula = stab_order_formula(d, q)
                    if brute != formula:
                        return False, (
                            f"table {d.to_rows()} q={q}: brute {brute} vs formula {formula}"
                        )
                    checked += 1
    return True, f"{checked} tables over q in {tuple(qs)}"


def check_lpu(qs=(2, 3, 5), max_n=6, trials=200, seed=303) -> tuple:
    """Decomposition exactness plus agreement with the relation grid."""
    rng = random.Random(seed)
    for t in range(trials):
        field, n, alpha, beta, a = _random_setup(qs, max_n, rng)
        dec = lpu(a)
        if dec.product() != a:
            return False, f"trial {t}: l perm u != a"
        if np.triu(dec.l.a, 1).any() or np.tril(dec.u.a, -1).any():
            return False, f"trial {t}: witnesses are not triangular"
        perm = dec.perm.a
        if not ((perm.sum(axis=0) == 1).all() and (perm.sum(axis=1) == 1).all()):
            return False, f"trial {t}: perm is not a permutation matrix"
        d = dimension_matrix(chi(a, alpha, beta))
        if perm_block_counts(dec.perm, alpha, beta) != d:
            return False, f"trial {t}: block counts disagree with the grid"
        if canonical_01(a, alpha, beta) != standard_matrix(d, field):
            return False, f"trial {t}: canonical forms disagree"
    return True, f"{trials} random matrices over q in {tuple(qs)}, n <= {max_n}"


def check_normal_form(q: int = 3, max_n: int = 5, trials: int = 100, seed=404) -> tuple:
    """normalize carries every computed grid onto its standard form."""
    rng = random.Random(seed)
    field = PrimeField(q)
    for t in range(trials):
        n = rng.randint(1, max_n)
        alpha = random_composition(n, rng)
        beta = random_composition(n, rng)
        a = random_invertible(field, n, rng)
        h = chi(a, alpha, beta)
        gs, hs, d = normalize(h)
        if hinge_act(gs, hs, h) != standard_bihinge(d, field):
            return False, f"trial {t}: normalized grid is not standard"
    return True, f"{trials} random grids over GF({q}), n <= {max_n}"


def count_three_ways(alpha, beta, q: int, budget: EnumerationBudget = None) -> tuple:
    """(formula count, closure class count, distinct grid count) for one case."""
    budget = budget or DEFAULT_BUDGET
    predicted = predicted_coset_count(alpha, beta, q)
    partition = double_cosets_brute(sum(alpha), q, alpha, beta, budget)
    grids = {chi(m, alpha, beta) for klass in partition.classes for m in klass}
    return predicted, partition.num_classes, len(grids)


_COUNT_CASES = (
    ((1, 1), (1, 1), 2),
    ((1, 1), (1, 1), 3),
    ((2,), (1, 1), 2),
    ((1, 1, 1), (1, 1, 1), 2),
)


def check_counting(budget: EnumerationBudget = None) -> tuple:
    """Formula, closure and grid counts agree on the pinned small cases."""
    results = []
    for alpha, beta, q in _COUNT_CASES:
        predicted, brute, grids = count_three_ways(alpha, beta, q, budget)
        if not predicted == brute == grids:
            return False, (
                f"alpha={alpha} beta={beta} q={q}: "
                f"predicted {predicted}, closure {brute}, grids {grids}"
            )
        results.append(predicted)
    return True, f"counts {results} for {len(_COUNT_CASES)} cases"


def run_selfcheck(qs=(2, 3), max_n: int = 4, budget: EnumerationBudget = None, out=print) -> bool:
    """Run every suite, print one PASS/FAIL line each, return overall success.

    Completeness rounds whose group order exceeds the budget are announced as
    SKIP lines rather than silently dropped.
    """
    budget = budget or DEFAULT_BUDGET
    qs = tuple(qs)
    suites = [
        ("invariance", lambda: check_invariance(qs=qs, max_n=max_n, trials=200)),
        ("axioms", lambda: check_axiom_soundness(qs=qs, max_n=max_n, trials=100)),
        ("canonical-forms", lambda: check_canonical_consistency(qs=qs)),
        ("surjectivity", lambda: _surjectivity_all(qs, budget)),
        ("stabilizers", lambda: check_stabilizers(qs=qs, budget=budget)),
        ("lpu", lambda: check_lpu(qs=qs, max_n=max_n, trials=200)),
        ("normal-form", lambda: check_normal_form(q=qs[0] if 3 not in qs else 3, max_n=min(max_n, 5))),
        ("counting", lambda: check_counting(budget=budget)),
    ]
    ok_all = True
    for name, run in suites:
        ok, detail = run()
        ok_all = ok_all and ok
        out(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    for q in qs:
        for n in range(2, max_n + 1):
            order = gl_order(n, q)
            if order > budget.max_group_order:
                out(f"SKIP completeness n={n} q={q}: |GL({n},{q})| = {order} exceeds budget")
                continue
            ok, detail = check_completeness(n, q, budget)
            ok_all = ok_all and ok
            out(f"{'PASS' if ok else 'FAIL'} completeness: {detail}")
    return ok_all


def _surjectivity_all(qs, budget) -> tuple:
    details = []
    for q in qs:
        ok, detail = check_surjectivity(q, budget)
        if not ok:
            return False, detail
        details.append(detail)
    return True, "; ".join(details)
