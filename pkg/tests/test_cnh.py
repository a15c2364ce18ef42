import random
from fractions import Fraction
from math import factorial

import pytest

from ctconfig import cnh as C
from ctconfig.cnh import CnH, CombinedComplex, matchings, p_r_count
from ctconfig.fields import GF
from ctconfig.pdalgebra import builtin_ring
from ctconfig.suites import cp2_elements, structure_map_checks

Q = Fraction


@pytest.fixture(scope="module")
def cp2():
    return builtin_ring("cp2")


def diff(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}


def test_basis_dimensions(cp2):
    assert len(CnH(cp2, 2).basis()) == 9
    assert len(CnH(cp2, 3).basis()) == 19
    assert CnH(cp2, 0).basis() == [((), ())]


def test_bidegrees(cp2):
    c = CnH(cp2, 2)
    bb = c.basis_by_bidegree()
    assert sum(len(v) for (k, r), v in bb.items() if r == 1) == 3
    assert c.degree(((), (2,))) == 7


def test_odd_rejected():
    with pytest.raises(ValueError):
        CnH(builtin_ring("sphere:3"), 2)


def test_small_prime_rejected(cp2):
    with pytest.raises(ValueError):
        CnH(builtin_ring("cp2", F=GF(3)), 3)


def test_odd_letters_do_not_repeat():
    h = builtin_ring("surface:1")
    c = CnH(h, 2)
    a = h.index("a1")
    assert ((a, a), ()) not in c.basis()
    assert c.monomial((a, a)) == {}


# -- differential -----------------------------------------------------------------

def test_d_s2(cp2):
    h = builtin_ring("sphere:2")
    for n in (2, 3, 4):
        c = CnH(h, n)
        d = c.d(c.monomial((0,) * (n - 2), (0,)))
        assert d == {((0,) * (n - 1) + (1,), ()): 1}


def test_d_cp2_generators(cp2):
    c = CnH(cp2, 2)
    assert c.d(c.monomial((), (0,))) == {((0, 2), ()): 1, ((1, 1), ()): Q(1, 2)}
    assert c.d(c.monomial((), (1,))) == {((1, 2), ()): 1}
    assert c.d(c.monomial((), (2,))) == {((2, 2), ()): Q(1, 2)}


def test_d_vanishes_on_r0(cp2):
    c = CnH(cp2, 3)
    for m in c.basis():
        if not m[1]:
            assert c.d_monomial(m) == {}


@pytest.mark.parametrize("name", ["sphere:2", "cp2", "surface:1", "surface:2", "sphere:2*sphere:2"])
@pytest.mark.parametrize("n", range(0, 6))
def test_d_squared(name, n):
    c = CnH(builtin_ring(name), n)
    for m in c.basis():
        assert c.d(c.d({m: 1})) == {}


def test_definition_sign_disagrees_with_phi(cp2):
    # the literal y-removal sign flips d(y_0) and breaks the chain map property
    c = CnH(cp2, 2)
    m = ((), (0,))
    assert c.d_monomial_definition(m) == {k: -v for k, v in c.d_monomial(m).items()}
    e = c.e1
    assert diff(c.phi(c.d_monomial_definition(m)), e.d1(c.phi({m: 1})))
    assert not diff(c.phi(c.d_monomial(m)), e.d1(c.phi({m: 1})))


@pytest.mark.parametrize("n", range(3, 7))
def test_cp2_cocycles(cp2, n):
    c = CnH(cp2, n)
    els = cp2_elements(c)
    for name in ("z0", "z1", "z2"):
        if name in els:
            assert els[name] and c.d(els[name]) == {}


# -- product ------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["cp2", "surface:1"])
@pytest.mark.parametrize("n", range(0, 5))
def test_unit(name, n):
    c = CnH(builtin_ring(name), n)
    u = c.unit()
    for m in c.basis():
        assert c.multiply(u, {m: 1}) == {m: 1}
        assert c.multiply({m: 1}, u) == {m: 1}


def test_unit_normalization(cp2):
    c = CnH(cp2, 3)
    assert c.unit() == {((0, 0, 0), ()): Q(1, 6)}


@pytest.mark.parametrize("n", [4, 5, 6])
def test_generator_products(cp2, n):
    # (e0^{n-2r}/(n-2r)! sy) (e0^{n-2}/(n-2)! sa) = e0^{n-2r-2}/(n-2r-2)! sy sa
    c = CnH(cp2, n)
    a = c.monomial((0,) * (n - 2), (1,), Q(1, factorial(n - 2)))
    b = c.monomial((0,) * (n - 2), (2,), Q(1, factorial(n - 2)))
    assert c.multiply(a, b) == c.monomial((0,) * (n - 4), (1, 2), Q(1, factorial(n - 4)))


def test_product_graded_commutative_and_associative():
    h = builtin_ring("surface:1")
    c = CnH(h, 4)
    B = c.basis()
    rng = random.Random(3)
    for _ in range(60):
        a, b, d = (rng.choice(B) for _ in range(3))
        A, Bv, D = {a: 1}, {b: 1}, {d: 1}
        s = (-1) ** (c.degree(a) * c.degree(b))
        assert c.multiply(A, Bv) == {k: s * v for k, v in c.multiply(Bv, A).items()}
        assert c.multiply(c.multiply(A, Bv), D) == c.multiply(A, c.multiply(Bv, D))


def test_leibniz():
    h = builtin_ring("surface:1")
    c = CnH(h, 4)
    B = c.basis()
    rng = random.Random(5)
    for _ in range(80):
        a, b = rng.choice(B), rng.choice(B)
        lhs = c.d(c.multiply({a: 1}, {b: 1}))
        rhs = dict(c.multiply(c.d({a: 1}), {b: 1}))
        for k, v in c.multiply({a: 1}, c.d({b: 1})).items():
            rhs[k] = rhs.get(k, 0) + (-1) ** c.degree(a) * v
        assert not diff(lhs, rhs)


def test_t1_squared_chain_level(cp2):
    # chain level: t1^2 differs from (3-2n) t2 by a coboundary
    for n in range(2, 7):
        c = CnH(cp2, n)
        els = cp2_elements(c)
        gap = diff(c.multiply(els["t1"], els["t1"]), {k: v * (3 - 2 * n) for k, v in els["t2"].items()})
        assert gap
        dy = c.d(c.monomial((0,) * (n - 2), (0,)))
        k = next(iter(dy))
        ratio = gap[k] / dy[k]
        assert gap == {m: ratio * v for m, v in dy.items()}


# -- comparison map -------------------------------------------------------------------

def test_phi_unit_to_unit(cp2):
    c = CnH(cp2, 2)
    assert c.phi(c.monomial((0, 0), (), Q(1, 2))) == c.e1.unit()


def test_phi_single_edge(cp2):
    c = CnH(cp2, 2)
    x = cp2.index("x")
    out = c.phi(c.monomial((), (x,)))
    assert out == {((x, 0), ((1, 2),)): 1}
    assert c.e1.sigma_act((2, 1), out) == out


def test_phi_three_edges(cp2):
    c = CnH(cp2, 3)
    out = c.phi(c.monomial((0,), (0,)))
    e = c.e1
    assert out == {k: 3 * v for k, v in e.average_project(e.edge(1, 2)).items()}


@pytest.mark.parametrize("name", ["sphere:2", "cp2", "surface:1"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_phi_matches_literal_composite(name, n):
    c = CnH(builtin_ring(name), n)
    for m in c.basis():
        f = factorial(n - 2 * len(m[1])) * factorial(len(m[1]))
        assert c.phi({m: 1}) == {k: f * v for k, v in c.phi_literal({m: 1}).items()}


# -- P_r ----------------------------------------------------------------------------------

def test_p_r_examples():
    assert p_r_count(4, 2) == 3
    assert p_r_count(2, 1) == 1
    assert p_r_count(5, 2) == 15
    assert matchings(4, 2) == [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))]


@pytest.mark.parametrize("n", range(0, 9))
def test_p_r_enumeration(n):
    for r in range(n // 2 + 1):
        ms = matchings(n, r)
        assert len(ms) == len(set(ms)) == p_r_count(n, r)
        for I in ms:
            used = [v for p in I for v in p]
            assert len(set(used)) == 2 * r
            assert all(i < j for i, j in I)
            assert [i for i, _ in I] == sorted(i for i, _ in I)


def test_p_r_bad_input():
    with pytest.raises(ValueError):
        p_r_count(3, 2)


# -- structure maps ------------------------------------------------------------------------

def test_rho_examples(cp2):
    F = cp2.field
    xd = {b: cp2.deg(b) for b in range(cp2.dim)}
    assert C.rho((1,), xd, F) == {(1,): 1}
    assert C.rho((0, 1), xd, F) == {(0, 1): Q(1, 2), (1, 0): Q(1, 2)}
    h = builtin_ring("surface:1")
    hd = {b: h.deg(b) for b in range(h.dim)}
    a, b = h.index("a1"), h.index("b1")
    assert C.rho((a, b), hd, h.field) == {(a, b): Q(1, 2), (b, a): Q(-1, 2)}
    with pytest.raises(ValueError):
        C.rho((0, 0, 0), xd, GF(3))


def test_red_prime_examples(cp2):
    F = cp2.field
    assert C.red_prime(cp2, (0, 1), F) == {(1,): 2}
    assert C.red_prime(cp2, (0, 0), F) == {(0,): 2}
    assert C.red_prime(cp2, (1, 1), F) == {(2,): 2}
    with pytest.raises(ValueError):
        C.red_prime(cp2, (0,), F)


def test_nu_prime_examples(cp2):
    F = cp2.field
    assert C.nu_prime(cp2, (1,), (1,), F) == {(2,): 1}
    assert C.nu_prime(cp2, (0, 1), (0, 1), F) == {(0, 2): 1, (1, 1): 1}
    assert C.nu_prime(cp2, (0, 0, 0), (0, 1, 2), F) == {(0, 1, 2): 6}
    with pytest.raises(ValueError):
        C.nu_prime(cp2, (0,), (0, 1), F)


@pytest.mark.parametrize("name", ["cp2", "sphere:2", "surface:1", "torus:2"])
def test_structure_squares(name):
    for check in structure_map_checks(builtin_ring(name), max_len=4):
        assert check.ok, check.line()


# -- combined complex ------------------------------------------------------------------------

def test_combined_complex_cp2(cp2):
    cc = CombinedComplex(cp2, 4)
    assert [g for g, _ in cc.generators()] == ["x0", "x1", "x2", "y0", "y1", "y2"]
    assert [d for _, d in cc.generators()] == [0, 2, 4, 3, 5, 7]
    for k in range(3):
        assert cc.d_generator(f"x{k}") == {}
    assert cc.d_generator("y0") == {((0, 2), ()): 1, ((1, 1), ()): Q(1, 2)}
    assert cc.d_generator("y1") == {((1, 2), ()): 1}
    assert cc.d_generator("y2") == {((2, 2), ()): Q(1, 2)}


def test_combined_complex_slices(cp2):
    cc = CombinedComplex(cp2, 5)
    for n, c in cc.slices.items():
        for m in c.basis():
            assert cc.slice_of(m) == n
            assert cc.d({m: 1}) == c.d({m: 1})
    c1 = cc.slices[1]
    assert len(c1.basis()) == cp2.dim
    assert all(not c1.d({m: 1}) for m in c1.basis())
