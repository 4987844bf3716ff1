"""Fuzzifying topological spaces on finite carriers.

A space is a carrier plus a fuzzy family ``tau`` giving every crisp subset
its degree of openness.  The crisp-argument operators (neighbourhood degree,
closure) and the interior of a fuzzy point set live here; everything built
on pre-open sets is in :mod:`fuzzitop.preopen`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .carrier import Carrier, CarrierError, SubsetId, bits, submasks
from .degree import ONE, ZERO, degree, format_degree, inf_over, sup_over


@dataclass(frozen=True)
class FuzzyFamily:
    """A total map from subsets of ``carrier`` to degrees, stored by bitmask."""

    carrier: Carrier
    deg: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.deg) != self.carrier.size:
            raise CarrierError(
                f"family has {len(self.deg)} entries, carrier needs {self.carrier.size}"
            )

    def __call__(self, a: SubsetId) -> Fraction:
        return self.deg[a]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.deg)

    @classmethod
    def from_function(cls, c: Carrier, fn: Callable[[SubsetId], Fraction]) -> "FuzzyFamily":
        return cls(c, tuple(fn(a) for a in c.subsets()))

    @classmethod
    def constant(cls, c: Carrier, value) -> "FuzzyFamily":
        return cls(c, (degree(value),) * c.size)

    @classmethod
    def from_mapping(cls, c: Carrier, values: Mapping[SubsetId, object], default=ZERO) -> "FuzzyFamily":
        table = [degree(default)] * c.size
        for mask, value in values.items():
            table[c.check(mask)] = degree(value)
        return cls(c, tuple(table))

    def replace(self, updates: Mapping[SubsetId, object]) -> "FuzzyFamily":
        table = list(self.deg)
        for mask, value in updates.items():
            table[self.carrier.check(mask)] = degree(value)
        return FuzzyFamily(self.carrier, tuple(table))

    def values(self) -> list[Fraction]:
        """Distinct degrees, ascending."""
        return sorted(set(self.deg))

    def leq(self, other: "FuzzyFamily") -> bool:
        same_carrier(self.carrier, other.carrier)
        return all(a <= b for a, b in zip(self.deg, other.deg))

    def to_dict(self) -> dict[str, str]:
        return {self.carrier.format(a): format_degree(d) for a, d in enumerate(self.deg)}


@dataclass(frozen=True)
class FuzzyPointSet:
    """A fuzzy subset of the carrier: one degree per point."""

    carrier: Carrier
    mu: tuple[Fraction, ...]

    def __call__(self, x: int) -> Fraction:
        return self.mu[x]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.mu)

    @classmethod
    def constant(cls, c: Carrier, value) -> "FuzzyPointSet":
        return cls(c, (degree(value),) * c.n)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.carrier.points, self.mu))


@dataclass(frozen=True)
class FuzzySpace:
    carrier: Carrier
    tau: FuzzyFamily

    def __post_init__(self):
        same_carrier(self.carrier, self.tau.carrier)

    @property
    def n(self) -> int:
        return self.carrier.n

    @property
    def full(self) -> SubsetId:
        return self.carrier.full


def same_carrier(a: Carrier, b: Carrier) -> None:
    if a != b:
        raise CarrierError(f"carrier mismatch: {list(a.points)} vs {list(b.points)}")


def make_space(points: Sequence[str], tau: Mapping[SubsetId, object] | Callable[[SubsetId], object]) -> FuzzySpace:
    """Build a space; subsets missing from ``tau`` get degree 0, except that
    the empty set and the whole carrier default to 1."""
    c = Carrier(tuple(points))
    if callable(tau):
        fam = FuzzyFamily.from_function(c, lambda a: degree(tau(a)))
    else:
        values = {0: ONE, c.full: ONE}
        values.update(tau)
        fam = FuzzyFamily.from_mapping(c, values)
    return FuzzySpace(c, fam)


# --------------------------------------------------------------------------
# validation


@dataclass
class Violation:
    axiom: str
    detail: str

    def __str__(self) -> str:
        return f"{self.axiom}: {self.detail}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    level_cuts_are_topologies: bool = True

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def level_cut(fam: FuzzyFamily, delta: Fraction) -> list[SubsetId]:
    return [a for a, d in enumerate(fam.deg) if d >= delta]


def is_topology(c: Carrier, opens: Iterable[SubsetId]) -> bool:
    members = set(opens)
    if 0 not in members or c.full not in members:
        return False
    return all(a & b in members and a | b in members for a, b in combinations(members, 2))


def validate(s: FuzzySpace) -> ValidationReport:
    """Check the three fuzzifying-topology axioms, listing every failure.

    The union axiom is checked through level cuts: on a finite carrier
    ``tau(U A_i) >= inf tau(A_i)`` for all families iff each cut
    ``{A : tau(A) >= d}`` is closed under pairwise union.
    """
    c, tau = s.carrier, s.tau
    report = ValidationReport()
    fmt = c.format
    if tau(0) != ONE:
        report.violations.append(Violation("tau(∅)=1", f"tau(∅)={format_degree(tau(0))}"))
    if tau(c.full) != ONE:
        report.violations.append(Violation("tau(X)=1", f"tau(X)={format_degree(tau(c.full))}"))
    for a in c.subsets():
        for b in range(a + 1, c.size):
            if tau(a & b) < min(tau(a), tau(b)):
                report.violations.append(Violation(
                    "intersection",
                    f"A={fmt(a)} B={fmt(b)}: tau(A∩B)={format_degree(tau(a & b))} "
                    f"< min={format_degree(min(tau(a), tau(b)))}",
                ))
    for delta in tau.values():
        if delta == 0:
            continue
        cut = level_cut(tau, delta)
        cut_set = set(cut)
        for a, b in combinations(cut, 2):
            if a | b not in cut_set:
                report.violations.append(Violation(
                    "union",
                    f"level {format_degree(delta)}: {fmt(a)} ∪ {fmt(b)} has degree "
                    f"{format_degree(tau(a | b))}",
                ))
        if not is_topology(c, cut):
            report.level_cuts_are_topologies = False
    return report


def is_valid(s: FuzzySpace) -> bool:
    return validate(s).valid


# --------------------------------------------------------------------------
# crisp-argument operators


def nbhd_table(c: Carrier, fam: FuzzyFamily) -> tuple[tuple[Fraction, ...], ...]:
    """``table[x][A] = sup {fam(B) : x in B subset A}`` for every point and set.

    Computed by a subset recursion: the best witness inside ``A`` is either
    ``A`` itself or lies inside ``A`` minus one point.
    """
    rows = []
    for x in range(c.n):
        xbit = 1 << x
        best = [ZERO] * c.size
        for a in range(c.size):
            if not a & xbit:
                continue
            value = fam(a)
            for y in bits(a & ~xbit):
                prev = best[a & ~(1 << y)]
                if prev > value:
                    value = prev
            best[a] = value
        rows.append(tuple(best))
    return tuple(rows)


def nbhd(s: FuzzySpace, x: int, a: SubsetId) -> Fraction:
    """Neighbourhood degree ``N_x(A)``: the best open degree of a set between x and A."""
    c = s.carrier
    c.check_point(x)
    c.check(a)
    if not a >> x & 1:
        return ZERO
    return sup_over(s.tau(b) for b in submasks(a) if b >> x & 1)


def closure(s: FuzzySpace, a: SubsetId) -> FuzzyPointSet:
    c = s.carrier
    comp = c.complement(a)
    return FuzzyPointSet(c, tuple(1 - nbhd(s, x, comp) for x in range(c.n)))


def interior_fuzzy(s: FuzzySpace, mu: FuzzyPointSet) -> FuzzyPointSet:
    """Interior of a fuzzy point set.

    ``Int(mu)(x) = sup over B containing x of min(tau(B), inf_{y in B} mu(y))``.
    """
    c = s.carrier
    same_carrier(c, mu.carrier)
    inside = [inf_over(mu(y) for y in bits(b)) for b in c.subsets()]
    out = []
    for x in range(c.n):
        out.append(sup_over(
            min(s.tau(b), inside[b]) for b in c.subsets() if b >> x & 1
        ))
    return FuzzyPointSet(c, tuple(out))


# --------------------------------------------------------------------------
# constructions


def trace_family(fam: FuzzyFamily, a: SubsetId) -> FuzzyFamily:
    """Family induced on the points of ``a``: ``(fam/A)(B) = sup {fam(V) : V ∩ A = B}``.

    The result lives on a carrier made of the points of ``a`` in their
    original order.
    """
    c = fam.carrier
    c.check(a)
    if a == 0:
        raise CarrierError("cannot restrict to the empty subset")
    idx = list(bits(a))
    sub = Carrier(tuple(c.points[i] for i in idx))
    best = [ZERO] * sub.size
    for v in c.subsets():
        local = compress(v & a, idx)
        if fam(v) > best[local]:
            best[local] = fam(v)
    return FuzzyFamily(sub, tuple(best))


def compress(mask: SubsetId, idx: Sequence[int]) -> SubsetId:
    """Re-index ``mask`` onto the positions listed in ``idx``."""
    out = 0
    for j, i in enumerate(idx):
        if mask >> i & 1:
            out |= 1 << j
    return out


def expand(local: SubsetId, idx: Sequence[int]) -> SubsetId:
    out = 0
    for j, i in enumerate(idx):
        if local >> j & 1:
            out |= 1 << i
    return out


def subspace(s: FuzzySpace, a: SubsetId) -> FuzzySpace:
    """Subspace ``(A, tau/A)``."""
    fam = trace_family(s.tau, a)
    return FuzzySpace(fam.carrier, fam)


class TopologyError(ValueError):
    pass


def crisp_embed(c: Carrier, opens: Iterable[SubsetId]) -> FuzzySpace:
    """The {0,1}-valued space of a classical topology given by its open sets."""
    members = {c.check(m) for m in opens}
    if not is_topology(c, members):
        raise TopologyError("open sets do not form a topology")
    return FuzzySpace(c, FuzzyFamily(c, tuple(ONE if a in members else ZERO for a in c.subsets())))


def generated_topology(c: Carrier, subbase: Iterable[SubsetId]) -> frozenset[SubsetId]:
    """Smallest topology containing ``subbase``."""
    base = {c.full} | {c.check(m) for m in subbase}
    while True:
        new = {a & b for a in base for b in base} - base
        if not new:
            break
        base |= new
    opens = {0}
    for m in base:
        opens |= {m | o for o in opens}
    return frozenset(opens)


def crisp_topologies(c: Carrier) -> Iterator[frozenset[SubsetId]]:
    """Every topology on ``c`` (brute force over candidate families; n <= 4)."""
    c.require(4, "topology enumeration")
    middle = list(range(1, c.full))
    for choice in range(1 << len(middle)):
        members = {0, c.full} | {m for i, m in enumerate(middle) if choice >> i & 1}
        if is_topology(c, members):
            yield frozenset(members)


def crisp_spaces(n: int, labels: str = "abcdefgh") -> Iterator[FuzzySpace]:
    c = Carrier(tuple(labels[:n]))
    for t in crisp_topologies(c):
        yield crisp_embed(c, t)


def grid_spaces(n: int, grid: int, labels: str = "abcdefgh") -> Iterator[FuzzySpace]:
    """Every valid space on ``n`` points with degrees in ``{i/grid}``."""
    c = Carrier(tuple(labels[:n]))
    if (grid + 1) ** (c.size - 2) > 2_000_000:
        raise CarrierError("too many candidate spaces to enumerate")
    values = [Fraction(i, grid) for i in range(grid + 1)]
    free = c.size - 2
    for code in range((grid + 1) ** free):
        table = [ONE] * c.size
        for j in range(free):
            code, r = divmod(code, grid + 1)
            table[j + 1] = values[r]
        s = FuzzySpace(c, FuzzyFamily(c, tuple(table)))
        if is_valid(s):
            yield s


def random_space(n: int, grid: int, seed: int, labels: str = "abcdefghijkl") -> FuzzySpace:
    """Seeded random valid space with degrees in ``{i/grid}``.

    Builds an ascending chain of crisp topologies ``T_1 ⊆ T_2 ⊆ ...`` and
    attaches descending levels ``1 = v_1 > v_2 > ...``; a set gets the level
    of the first topology containing it, and 0 if none does.  Every level
    cut is then one of the ``T_i``, so the axioms hold by construction.
    """
    if grid < 1:
        raise ValueError("grid must be >= 1")
    if n < 1 or n > len(labels):
        raise CarrierError(f"point count {n} out of range")
    rng = random.Random(seed)
    c = Carrier(tuple(labels[:n]))
    inner = list(range(1, c.full))
    below_one = [Fraction(i, grid) for i in range(grid - 1, 0, -1)]
    steps = rng.randint(0, len(below_one)) if below_one else 0
    levels = [ONE] + sorted(rng.sample(below_one, steps), reverse=True)

    tau = [ZERO] * c.size
    current: frozenset[SubsetId] = frozenset({0, c.full})
    generators: list[SubsetId] = []
    for level in levels:
        if inner:
            generators += rng.sample(inner, rng.randint(0, min(2, len(inner))))
        current = generated_topology(c, generators)
        for a in current:
            if tau[a] == 0:
                tau[a] = level
    return FuzzySpace(c, FuzzyFamily(c, tuple(tau)))
