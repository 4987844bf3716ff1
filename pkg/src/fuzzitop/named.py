"""Small named spaces used as references throughout."""

from __future__ import annotations

from fractions import Fraction

from .carrier import Carrier
from .space import FuzzySpace, crisp_embed, make_space

LABELS = "abcdefghijkl"


def sierpinski() -> FuzzySpace:
    """Crisp Sierpiński space: opens ∅, {a}, X."""
    return make_space("ab", {0b01: 1})


def graded_pair() -> FuzzySpace:
    """Two points with τ({a}) = 3/4 and τ({b}) = 1/2."""
    return make_space("ab", {0b01: Fraction(3, 4), 0b10: Fraction(1, 2)})


def discrete(n: int) -> FuzzySpace:
    c = Carrier(tuple(LABELS[:n]))
    return crisp_embed(c, range(c.size))


def indiscrete(n: int) -> FuzzySpace:
    c = Carrier(tuple(LABELS[:n]))
    return crisp_embed(c, {0, c.full})


NAMED = {
    "s1": sierpinski,
    "s2": graded_pair,
    "sierpinski": sierpinski,
    "discrete2": lambda: discrete(2),
    "discrete3": lambda: discrete(3),
    "indiscrete2": lambda: indiscrete(2),
    "indiscrete3": lambda: indiscrete(3),
}
