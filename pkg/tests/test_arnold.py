from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from ctconfig import arnold
from ctconfig.fields import GF


@pytest.mark.parametrize("odd", [0, 1])
def test_three_term_rewrite(odd):
    # e13 e23 = e12 e23 - e12 e13 in both parities
    assert arnold.straighten(3, odd, [(1, 3), (2, 3)]) == {((1, 2), (2, 3)): 1, ((1, 2), (1, 3)): -1}


@pytest.mark.parametrize("odd", [0, 1])
def test_cycles_and_repeats_vanish(odd):
    assert arnold.straighten(3, odd, [(1, 2), (2, 3), (1, 3)]) == {}
    assert arnold.straighten(3, odd, [(1, 2), (1, 2)]) == {}


def test_orientation_sign():
    # e_21 = (-1)^N e_12
    assert arnold.straighten(2, 0, [(2, 1)]) == {((1, 2),): 1}
    assert arnold.straighten(2, 1, [(2, 1)]) == {((1, 2),): -1}


def test_anticommuting_edges():
    assert arnold.straighten(4, 0, [(3, 4), (1, 2)]) == {((1, 2), (3, 4)): -1}
    assert arnold.straighten(4, 1, [(3, 4), (1, 2)]) == {((1, 2), (3, 4)): 1}


@pytest.mark.parametrize("n", range(1, 7))
def test_top_component_dimension(n):
    assert len(arnold.top_component(n)) == factorial(n - 1)


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("N", [2, 3, 4])
def test_poincare_product_formula(n, N):
    assert arnold.poincare_polynomial(n, N) == arnold.product_formula(n, N)


def test_poincare_example():
    assert arnold.poincare_polynomial(3, 2) == [1, 3, 2]


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("odd", [0, 1])
def test_full_invariants_vanish(n, odd):
    dim, _ = arnold.tree_invariants(n, odd, "full")
    assert dim == 0
    assert arnold.fixed_rank_by_averaging(n, odd, "full") == 0


def test_n2_even_full_invariant():
    assert arnold.tree_invariants(2, 0, "full")[0] == 1


@pytest.mark.parametrize("n", [3, 4, 5])
def test_stabilizer_invariant_is_star_tree(n):
    dim, vecs = arnold.tree_invariants(n, 1, "stabilizer_of_1")
    assert dim == 1
    (v,) = vecs
    assert set(v) == {arnold.star_tree(n)}


@pytest.mark.parametrize("n", [3, 4, 5])
def test_stabilizer_invariant_dimension_even(n):
    assert arnold.tree_invariants(n, 0, "stabilizer_of_1")[0] == 1
    assert arnold.fixed_rank_by_averaging(n, 0, "stabilizer_of_1") == 1


@pytest.mark.parametrize("odd", [0, 1])
def test_action_is_a_group_action(odd):
    n = 4
    basis = [m for r in range(n) for m in arnold.os_basis(n, r)]
    perms = list(permutations(range(1, n + 1)))[::5]
    for s in perms:
        for t in perms:
            st_ = arnold.compose(s, t)
            for m in basis:
                lhs = arnold.act(st_, m, odd)
                rhs = {}
                for m2, c in arnold.act(t, m, odd).items():
                    for m3, c3 in arnold.act(s, m2, odd).items():
                        rhs[m3] = rhs.get(m3, 0) + c * c3
                assert lhs == {k: v for k, v in rhs.items() if v}


edge_lists = st.integers(3, 6).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda e: e[0] != e[1]),
                         max_size=n - 1)))


@settings(max_examples=80, deadline=None)
@given(edge_lists, st.integers(0, 1))
def test_straighten_gives_canonical_forests(data, odd):
    n, edges = data
    out = arnold.straighten(n, odd, edges)
    for m in out:
        assert arnold.is_canonical(m)
        assert not arnold.has_cycle(m)
        assert len(m) == len(edges)


def test_guard_on_group_elements():
    with pytest.raises(ValueError):
        list(arnold.group_elements(9))


def test_averaging_needs_invertible_order():
    with pytest.raises(ValueError):
        arnold.averaging_matrix(3, 0, arnold.top_component(3), "full", GF(3))
