from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ctconfig.fields import GF, QQ, Field, Fp, is_prime, parse_field


def test_is_prime():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_rational_conversions():
    assert QQ("2/4") == Fraction(1, 2)
    assert QQ(3) == Fraction(3)


def test_fp_fraction_reduction():
    F = GF(7)
    assert F(Fraction(1, 2)) * 2 == F.one
    assert F("1/3") == F(5)
    assert str(F(6)) == "-1"


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        Field(6)


def test_parse_field():
    assert parse_field("q") == QQ
    assert parse_field("fp:101") == GF(101)
    with pytest.raises(ValueError):
        parse_field("r")


def test_require_order():
    GF(5).require_order(4)
    QQ.require_order(100)
    with pytest.raises(ValueError):
        GF(3).require_order(3)


def test_mixing_primes_fails():
    with pytest.raises(ValueError):
        GF(5)(Fp(1, 7))


ints = st.integers(min_value=-10**6, max_value=10**6)


@given(ints, ints, ints)
def test_fp_field_axioms(a, b, c):
    F = GF(101)
    x, y, z = F(a), F(b), F(c)
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert (x - y) + y == x
    if y:
        assert (x / y) * y == x


@given(ints, st.integers(min_value=1, max_value=10**6))
def test_fp_matches_rational_reduction(a, b):
    F = GF(101)
    if b % 101 == 0:
        return
    assert F(Fraction(a, b)) * F(b) == F(a)
