from fractions import Fraction
from itertools import permutations

import pytest

from ctconfig.e1 import E1, odd_invariants_check
from ctconfig.pdalgebra import builtin_ring

RINGS = ["sphere:2", "cp2", "surface:1", "sphere:3", "sphere:1*sphere:2"]


def lab(e, **kw):
    return {e.h.index(k): v for k, v in kw.items()}


def test_dimensions():
    assert len(E1(builtin_ring("cp2"), 2).basis()) == 12
    assert len(E1(builtin_ring("cp2"), 3).basis()) == 60
    assert len(E1(builtin_ring("sphere:2"), 2).basis()) == 6


def test_d1_on_edge_s2():
    e = E1(builtin_ring("sphere:2"), 2)
    h = e.h
    w = h.index("w")
    assert e.d1(e.edge(1, 2)) == {((0, w), ()): 1, ((w, 0), ()): 1}


def test_d1_labelled_edge_cp2():
    e = E1(builtin_ring("cp2"), 2)
    x, x2 = e.h.index("x"), e.h.index("x^2")
    xe = e.multiply(e.label(1, x), e.edge(1, 2))
    assert e.d1(xe) == {((x, x2), ()): 1, ((x2, x), ()): 1}


def test_label_moves_to_root():
    e = E1(builtin_ring("cp2"), 2)
    x = e.h.index("x")
    assert e.multiply(e.label(2, x), e.edge(1, 2)) == e.multiply(e.label(1, x), e.edge(1, 2))


def test_averaging_edge():
    e = E1(builtin_ring("cp2"), 3)
    third = Fraction(1, 3)
    avg = e.average_project(e.edge(1, 2))
    assert avg == {((0, 0, 0), ((1, 2),)): third, ((0, 0, 0), ((1, 3),)): third,
                   ((0, 0, 0), ((2, 3),)): third}


def test_star_tree_averages_to_zero():
    e = E1(builtin_ring("cp2"), 3)
    c3 = e.multiply(e.edge(1, 2), e.edge(1, 3))
    assert e.average_project(c3) == {}


def test_invariant_counts():
    assert sum(len(v) for v in E1(builtin_ring("cp2"), 2).invariants_basis().values()) == 9
    assert sum(len(v) for v in E1(builtin_ring("sphere:2"), 2).invariants_basis().values()) == 5


@pytest.mark.parametrize("name", RINGS)
@pytest.mark.parametrize("n", [2, 3])
def test_algebra_laws(name, n):
    e = E1(builtin_ring(name), n)
    B = e.basis()
    for m in B:
        assert not e.d1(e.d1({m: 1}))
    sample = B[:: max(1, len(B) // 12)]
    for a in sample:
        for b in sample:
            A, Bv = {a: 1}, {b: 1}
            ab = e.multiply(A, Bv)
            ba = e.multiply(Bv, A)
            sign = (-1) ** (e.degree(a) * e.degree(b))
            assert ab == {k: sign * v for k, v in ba.items()}
            lhs = e.d1(ab)
            rhs = dict(e.multiply(e.d1(A), Bv))
            for k, v in e.multiply(A, e.d1(Bv)).items():
                rhs[k] = rhs.get(k, 0) + (-1) ** e.degree(a) * v
            assert lhs == {k: v for k, v in rhs.items() if v}
            for c in sample[:4]:
                C = {c: 1}
                assert e.multiply(e.multiply(A, Bv), C) == e.multiply(A, e.multiply(Bv, C))


@pytest.mark.parametrize("name", RINGS)
def test_d1_equivariant_and_averaging_idempotent(name):
    e = E1(builtin_ring(name), 3)
    for g in permutations(range(1, 4)):
        for m in e.basis():
            x = {m: 1}
            assert e.d1(e.sigma_act(g, x)) == e.sigma_act(g, e.d1(x))
    for m in e.basis():
        a = e.average_project({m: 1})
        assert e.average_project(a) == a


def test_bad_permutation():
    e = E1(builtin_ring("cp2"), 3)
    with pytest.raises(ValueError):
        e.sigma_act((1, 1, 2), e.unit())


@pytest.mark.parametrize("n", [2, 3])
def test_odd_s3(n):
    ok, words = odd_invariants_check(builtin_ring("sphere:3"), n)
    assert ok
    assert sorted(d for _, d in words) == [0, 3]


def test_odd_check_rejects_even():
    with pytest.raises(ValueError):
        odd_invariants_check(builtin_ring("cp2"), 2)
