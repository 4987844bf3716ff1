from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fuzzitop.degree import (
    DegreeError, ONE, ZERO, crisp, degree, format_degree, iff, implies, inf_over, join, meet, neg, sup_over, tnorm,
)

grid = st.integers(0, 12).map(lambda k: Fraction(k, 12))
rationals = st.fractions(min_value=0, max_value=1, max_denominator=50)


def test_tnorm_examples():
    assert tnorm(Fraction(7, 10), Fraction(6, 10)) == Fraction(3, 10)
    assert tnorm(Fraction(1, 4), Fraction(1, 2)) == 0


def test_implies_examples():
    assert implies(Fraction(4, 5), Fraction(1, 2)) == Fraction(7, 10)
    assert implies(ZERO, Fraction(1, 3)) == ONE


def test_connectives():
    assert meet(Fraction(3, 4), Fraction(1, 2)) == Fraction(1, 2)
    assert join(Fraction(3, 4), Fraction(1, 2)) == Fraction(3, 4)
    assert iff(Fraction(1, 4), Fraction(3, 4)) == Fraction(1, 2)


def test_empty_folds():
    assert inf_over([]) == ONE
    assert sup_over([]) == ZERO
    assert inf_over([Fraction(3, 4), Fraction(1, 2), ONE]) == Fraction(1, 2)


def test_degree_parsing():
    assert degree("3/4") == Fraction(3, 4)
    assert degree("0.5") == Fraction(1, 2)
    assert degree(1) == ONE
    for bad in ("5/4", "-1", "x", 0.5, True):
        with pytest.raises(DegreeError):
            degree(bad)
    assert format_degree(ONE) == "1/1"
    assert crisp(True) == ONE and crisp(False) == ZERO


@given(rationals, rationals, rationals)
def test_tnorm_laws(a, b, c):
    assert tnorm(a, b) == tnorm(b, a)
    assert tnorm(a, tnorm(b, c)) == tnorm(tnorm(a, b), c)
    assert tnorm(a, ONE) == a
    if b <= c:
        assert tnorm(a, b) <= tnorm(a, c)


@given(grid, grid, grid)
def test_residuation(a, b, c):
    assert (tnorm(a, b) <= c) == (a <= implies(b, c))


@given(rationals, rationals)
def test_implication_is_order(a, b):
    assert (implies(a, b) == ONE) == (a <= b)
    assert implies(a, a) == ONE


@given(rationals, rationals)
def test_de_morgan_and_involution(a, b):
    assert neg(neg(a)) == a
    assert neg(meet(a, b)) == join(neg(a), neg(b))
    assert neg(join(a, b)) == meet(neg(a), neg(b))
    assert iff(a, b) == 1 - abs(a - b)
