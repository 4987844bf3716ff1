"""Finite products and their pre-open structure.

The product pre-base grades a box ``∏ V_s`` (one set per factor) by
``min_s (τ_P)_s(V_s)``; a set that is a box in several ways keeps the best
grade.  Its union closure is the product pre-open family.  Points of the product are tuples of factor labels joined by ``|``,
listed with the first factor varying slowest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian
from typing import Sequence

from .carrier import Carrier, CarrierError, SubsetId, max_points
from .degree import ZERO
from .maps import PointMap
from .preopen import PreopenStructure, Structured, as_structure, union_closure
from .space import FuzzyFamily

SEPARATOR = "|"


@dataclass(frozen=True, eq=False)
class ProductSpace:
    factors: tuple[PreopenStructure, ...]
    carrier: Carrier = field(init=False)
    coords: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        if len(self.factors) < 2:
            raise CarrierError("a product needs at least two factors")
        size = 1
        for f in self.factors:
            size *= f.n
        if size > max_points():
            raise CarrierError(f"product has {size} points, cap is {max_points()}")
        coords = tuple(cartesian(*(range(f.n) for f in self.factors)))
        labels = tuple(
            SEPARATOR.join(f.carrier.points[i] for f, i in zip(self.factors, tup)) for tup in coords
        )
        object.__setattr__(self, "carrier", Carrier(labels))
        object.__setattr__(self, "coords", coords)

    def projection(self, s: int) -> PointMap:
        return PointMap(self.carrier, self.factors[s].carrier, tuple(t[s] for t in self.coords))

    def cylinder(self, s: int, w: SubsetId) -> SubsetId:
        return self.projection(s).preimage(w)

    def box(self, sides: Sequence[SubsetId]) -> SubsetId:
        out = self.carrier.full
        for s, w in enumerate(sides):
            out &= self.cylinder(s, w)
        return out

    @cached_property
    def beta_p(self) -> FuzzyFamily:
        table = [ZERO] * self.carrier.size
        for sides in cartesian(*(f.carrier.subsets() for f in self.factors)):
            grade = min(f.tau_p(w) for f, w in zip(self.factors, sides))
            b = self.box(sides)
            if grade > table[b]:
                table[b] = grade
        return FuzzyFamily(self.carrier, tuple(table))

    @cached_property
    def structure(self) -> PreopenStructure:
        return PreopenStructure(self.carrier, union_closure(self.beta_p))

    @property
    def tau_p(self) -> FuzzyFamily:
        return self.structure.tau_p

    @property
    def n(self) -> int:
        return self.carrier.n


def product_space(spaces: Sequence[Structured]) -> ProductSpace:
    return ProductSpace(tuple(as_structure(s) for s in spaces))
