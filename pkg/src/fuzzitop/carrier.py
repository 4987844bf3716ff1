"""Finite carriers and bitmask subsets.

A subset of a carrier with ``n`` points is an ``int`` in ``[0, 2**n)``; bit
``i`` is set iff point ``i`` belongs to it.  Subsets are enumerated in
numeric order of that word, so the empty set comes first and the whole
carrier last.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

SubsetId = int

#: default cap for plain subset streams
MAX_POINTS = 12
#: cap for operations that quantify over fuzzy families of subsets
MAX_FAMILY_POINTS = 5


class CarrierError(ValueError):
    """Structural misuse: unknown points, mismatched carriers, caps."""


def max_points() -> int:
    """Enumeration cap, overridable with ``FUZZITOP_MAX_POINTS``."""
    raw = os.environ.get("FUZZITOP_MAX_POINTS")
    return int(raw) if raw else MAX_POINTS


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask`` (including 0 and ``mask`` itself)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class Carrier:
    points: tuple[str, ...]

    def __post_init__(self):
        pts = tuple(str(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(set(pts)) != len(pts):
            raise CarrierError(f"duplicate point labels in {list(pts)}")
        if len(pts) > max_points():
            raise CarrierError(
                f"{len(pts)} points exceeds the enumeration cap {max_points()} "
                "(set FUZZITOP_MAX_POINTS to override)"
            )

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full(self) -> SubsetId:
        return (1 << self.n) - 1

    @property
    def size(self) -> int:
        """Number of subsets, ``2**n``."""
        return 1 << self.n

    def __len__(self) -> int:
        return self.n

    def index(self, label: str) -> int:
        try:
            return self.points.index(label)
        except ValueError:
            raise CarrierError(f"unknown point {label!r}") from None

    def subset(self, labels: Iterable[str]) -> SubsetId:
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return mask

    def singleton(self, x: int) -> SubsetId:
        self.check_point(x)
        return 1 << x

    def labels(self, mask: SubsetId) -> list[str]:
        self.check(mask)
        return [self.points[i] for i in bits(mask)]

    def check(self, mask: SubsetId) -> SubsetId:
        if mask < 0 or mask > self.full:
            raise CarrierError(f"subset {mask:#b} is not over carrier {list(self.points)}")
        return mask

    def check_point(self, x: int) -> int:
        if not 0 <= x < self.n:
            raise CarrierError(f"point index {x} outside carrier of size {self.n}")
        return x

    def require(self, limit: int, what: str) -> None:
        """Refuse operations whose cost class does not admit this carrier."""
        if self.n > limit:
            raise CarrierError(f"{what} is limited to {limit} points, carrier has {self.n}")

    # set algebra -----------------------------------------------------------

    def complement(self, a: SubsetId) -> SubsetId:
        return self.full & ~self.check(a)

    def intersect(self, a: SubsetId, b: SubsetId) -> SubsetId:
        return self.check(a) & self.check(b)

    def union(self, a: SubsetId, b: SubsetId) -> SubsetId:
        return self.check(a) | self.check(b)

    def difference(self, a: SubsetId, b: SubsetId) -> SubsetId:
        return self.check(a) & ~self.check(b)

    def is_subset(self, a: SubsetId, b: SubsetId) -> bool:
        return self.check(a) & ~self.check(b) == 0

    def member(self, x: int, a: SubsetId) -> bool:
        self.check_point(x)
        return bool(self.check(a) >> x & 1)

    # enumeration -----------------------------------------------------------

    def subsets(self) -> Iterator[SubsetId]:
        """All ``2**n`` subsets, empty set first, whole carrier last."""
        return iter(range(self.size))

    def disjoint_pairs(self) -> Iterator[tuple[SubsetId, SubsetId]]:
        """All ordered pairs ``(A, B)`` with ``A & B == 0``; there are ``3**n``."""
        # each point goes to A, to B, or to neither
        for assignment in product((0, 1, 2), repeat=self.n):
            a = b = 0
            for i, slot in enumerate(assignment):
                if slot == 1:
                    a |= 1 << i
                elif slot == 2:
                    b |= 1 << i
            yield a, b

    def format(self, mask: SubsetId) -> str:
        return "{" + ",".join(self.labels(mask)) + "}"


def carrier(points: Sequence[str]) -> Carrier:
    return Carrier(tuple(points))
