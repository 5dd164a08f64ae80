import itertools
import math
import random

import pytest

from tautmat.genperm import (
    GenPermutohedron,
    GuardrailExceeded,
    SubmodularityViolation,
    base_polytope,
    simplex,
)
from tautmat.matroid import bits, mask_of, popcount, uniform


def brute_force_points(p):
    """Oracle: scan the whole bounding box and apply every constraint."""
    los, his = p.coordinate_bounds()
    out = []
    for pt in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(los, his))):
        if sum(pt) != p.rk[p.full_mask]:
            continue
        if all(
            sum(pt[i] for i in bits(s)) <= p.rk[s] for s in range(1, p.full_mask + 1)
        ):
            out.append(pt)
    return sorted(out)


def test_base_polytope_table():
    p = base_polytope(uniform(2, 4))
    assert all(p.rk[s] == min(popcount(s), 2) for s in range(16))


def test_negate_formula():
    nabla = simplex(3).negate()
    assert nabla.rk[nabla.full_mask] == -1
    assert all(nabla.rk[s] == 0 for s in range(1, 7))
    assert simplex(3).negate().negate() == simplex(3)


def test_minkowski_sum_adds_tables():
    p = base_polytope(uniform(2, 4))
    d = simplex(4)
    assert (p + d).rk == [a + b for a, b in zip(p.rk, d.rk)]
    assert p.dilate(3).rk == [3 * v for v in p.rk]
    with pytest.raises(ValueError):
        p.dilate(-1)


def test_submodularity_validation():
    # rk({0}) + rk({1}) < rk({0,1}) + rk({}) violates submodularity
    with pytest.raises(SubmodularityViolation):
        GenPermutohedron(2, [0, 0, 0, 1])
    GenPermutohedron(2, [0, 1, 1, 1])  # the simplex table is fine


def test_vertices():
    p = base_polytope(uniform(2, 4))
    assert p.vertex_at((0, 1, 2, 3), "max") == (1, 1, 0, 0)
    d = simplex(4)
    for sigma in itertools.permutations(range(4)):
        v = d.vertex_at(sigma, "min")
        assert v == tuple(1 if i == sigma[-1] else 0 for i in range(4))


def test_lattice_points_hypersimplex():
    pts = base_polytope(uniform(2, 4)).lattice_points()
    assert len(pts) == 6
    assert all(sorted(pt) == [0, 0, 1, 1] for pt in pts)


def test_lattice_points_small_simplex():
    assert simplex(3, mask_of([0, 1])).count_lattice_points() == 2


def test_dilated_simplex_binomial_count():
    # c-dilated standard simplex on k coordinates has C(c + k - 1, k - 1) points
    for k in (2, 3, 4):
        for c in (0, 1, 2, 3):
            n = simplex(k).dilate(c).count_lattice_points()
            assert n == math.comb(c + k - 1, k - 1)


def test_base_polytope_counts_bases(small_corpus):
    for _, m in small_corpus:
        assert base_polytope(m).count_lattice_points() == len(m.bases)


def test_lattice_points_match_brute_force():
    rng = random.Random(77)
    mats = [uniform(1, 3), uniform(2, 3), uniform(2, 4), uniform(3, 4)]
    for _ in range(12):
        p = base_polytope(rng.choice(mats))
        n = p.n_elements
        q = p
        for _ in range(rng.randrange(0, 3)):
            q = q + rng.choice([simplex(n), simplex(n).negate(), base_polytope(uniform(1, n))])
        assert sorted(q.lattice_points()) == brute_force_points(q)


def test_guardrail():
    big = simplex(10)
    with pytest.raises(GuardrailExceeded):
        big.lattice_points()
    assert big.lattice_points(limit=10)
