"""Exact Lukasiewicz truth degrees.

Degrees are plain :class:`fractions.Fraction` values in ``[0, 1]``; every
connective below is closed over the rationals, so no rounding ever happens.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Degree = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

DegreeLike = Union[Fraction, int, str]


class DegreeError(ValueError):
    """Raised for values that are not rationals in [0, 1]."""


def degree(value: DegreeLike) -> Fraction:
    """Coerce ``value`` to a checked degree.

    Accepts Fractions, ints and strings of the form ``"p/q"`` or a decimal
    literal such as ``"0.75"``.  Floats are rejected on purpose.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise DegreeError(f"degrees must be exact, got {value!r}")
    try:
        d = Fraction(value.strip()) if isinstance(value, str) else Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise DegreeError(f"not a rational degree: {value!r}") from exc
    if d < 0 or d > 1:
        raise DegreeError(f"degree out of [0,1]: {value!r}")
    return d


def format_degree(d: Fraction) -> str:
    """Serialize as reduced ``"p/q"``; integers keep the ``/1``."""
    return f"{d.numerator}/{d.denominator}"


def tnorm(a: Fraction, b: Fraction) -> Fraction:
    return max(ZERO, a + b - 1)


def implies(a: Fraction, b: Fraction) -> Fraction:
    return min(ONE, 1 - a + b)


def meet(a: Fraction, b: Fraction) -> Fraction:
    return min(a, b)


def join(a: Fraction, b: Fraction) -> Fraction:
    return max(a, b)


def neg(a: Fraction) -> Fraction:
    return 1 - a


def iff(a: Fraction, b: Fraction) -> Fraction:
    # min of both residua, i.e. 1 - |a - b|
    return min(implies(a, b), implies(b, a))


def inf_over(items: Iterable[Fraction]) -> Fraction:
    """Infimum with the empty-domain convention ``inf {} = 1``."""
    return min(items, default=ONE)


def sup_over(items: Iterable[Fraction]) -> Fraction:
    """Supremum with the empty-domain convention ``sup {} = 0``."""
    return max(items, default=ZERO)


def crisp(flag: bool) -> Fraction:
    return ONE if flag else ZERO
