"""Nets on finite carriers.

A net is represented by its kernel ``E``, the set of values it takes
cofinally.  On a finite carrier the net is eventually inside ``A`` exactly
when ``E ⊆ A`` and frequently inside ``A`` exactly when ``A ∩ E ≠ ∅``.
:class:`ExplicitNet` evaluates the same predicates literally on an
eventually periodic sequence and serves as the reference.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .carrier import Carrier, CarrierError, SubsetId, bits, popcount, submasks
from .degree import ONE, implies, inf_over, sup_over
from .preopen import Structured, as_structure
from .space import FuzzyPointSet


@dataclass(frozen=True)
class NetRep:
    kernel: SubsetId

    def __post_init__(self):
        if self.kernel <= 0:
            raise CarrierError("a net kernel must be nonempty")

    def almost_in(self, a: SubsetId) -> bool:
        return self.kernel & ~a == 0

    def often_in(self, a: SubsetId) -> bool:
        return bool(self.kernel & a)


def all_nets(c: Carrier) -> Iterator[NetRep]:
    return (NetRep(e) for e in range(1, c.size))


def pre_converges(obj: Structured, net: NetRep, x: int) -> Fraction:
    """``inf over A not containing the kernel of (1 - N^P_x(A))``."""
    st = as_structure(obj)
    st.carrier.check_point(x)
    row = st.nbhd[x]
    return inf_over(1 - row[a] for a in st.carrier.subsets() if not net.almost_in(a))


def pre_accumulates(obj: Structured, net: NetRep, x: int) -> Fraction:
    """``inf over A missing the kernel of (1 - N^P_x(A))``."""
    st = as_structure(obj)
    st.carrier.check_point(x)
    row = st.nbhd[x]
    return inf_over(1 - row[a] for a in st.carrier.subsets() if not net.often_in(a))


def adh_p(obj: Structured, net: NetRep) -> FuzzyPointSet:
    st = as_structure(obj)
    return FuzzyPointSet(st.carrier, tuple(pre_accumulates(st, net, x) for x in range(st.n)))


def is_universal(net: NetRep) -> bool:
    return popcount(net.kernel) == 1


def subnet_reps(net: NetRep) -> Iterator[NetRep]:
    return (NetRep(e) for e in submasks(net.kernel) if e)


def beta2(obj: Structured) -> Fraction:
    """Every universal net pre-converges somewhere."""
    st = as_structure(obj)
    return inf_over(
        sup_over(pre_converges(st, NetRep(1 << y), x) for x in range(st.n))
        for y in range(st.n)
    )


def beta3(obj: Structured) -> Fraction:
    """Every net has a pre-convergent subnet."""
    st = as_structure(obj)
    return inf_over(
        sup_over(
            pre_converges(st, sub, x) for sub in subnet_reps(net) for x in range(st.n)
        )
        for net in all_nets(st.carrier)
    )


def beta4(obj: Structured) -> Fraction:
    """Every net has nonempty pre-adherence: ``inf_S sup_x adh_P S(x)``."""
    st = as_structure(obj)
    return inf_over(sup_over(adh_p(st, net).mu) for net in all_nets(st.carrier))


# --------------------------------------------------------------------------
# explicit nets


class DirectednessError(ValueError):
    pass


@dataclass(frozen=True)
class ExplicitNet:
    """The sequence ``prefix + cycle + cycle + ...`` indexed by the naturals."""

    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ValueError("the periodic part of a net cannot be empty")

    def __call__(self, k: int) -> int:
        if k < len(self.prefix):
            return self.prefix[k]
        return self.cycle[(k - len(self.prefix)) % len(self.cycle)]

    def tails(self) -> Iterator[frozenset[int]]:
        """Value sets of ``{S(k) : k >= m}``; later tails repeat the last one."""
        seq = self.prefix + self.cycle
        recurring = set(self.cycle)
        for m in range(len(seq)):
            yield frozenset(set(seq[m:]) | recurring)

    def almost_in(self, a: SubsetId) -> bool:
        return any(all(a >> v & 1 for v in tail) for tail in self.tails())

    def often_in(self, a: SubsetId) -> bool:
        return all(any(a >> v & 1 for v in tail) for tail in self.tails())

    def cofinal_values(self) -> SubsetId:
        mask = 0
        for v in self.cycle:
            mask |= 1 << v
        return mask


@dataclass(frozen=True)
class FiniteNet:
    """A net on a finite directed preorder, given by stages and ``<=`` pairs."""

    stages: tuple[Hashable, ...]
    order: frozenset[tuple[Hashable, Hashable]]
    values: Mapping[Hashable, int]

    @classmethod
    def build(cls, stages: Sequence[Hashable], order: Iterable[tuple[Hashable, Hashable]], values: Mapping[Hashable, int]) -> "FiniteNet":
        stages = tuple(stages)
        rel = {(s, s) for s in stages} | set(order)
        changed = True
        while changed:
            extra = {(a, d) for (a, b) in rel for (c, d) in rel if b == c} - rel
            changed = bool(extra)
            rel |= extra
        for a in stages:
            for b in stages:
                if not any((a, u) in rel and (b, u) in rel for u in stages):
                    raise DirectednessError(f"stages {a!r} and {b!r} have no common upper bound")
        return cls(stages, frozenset(rel), dict(values))

    def later(self, d: Hashable) -> list[Hashable]:
        return [e for e in self.stages if (d, e) in self.order]

    def almost_in(self, a: SubsetId) -> bool:
        return any(all(a >> self.values[e] & 1 for e in self.later(d)) for d in self.stages)

    def often_in(self, a: SubsetId) -> bool:
        return all(any(a >> self.values[e] & 1 for e in self.later(d)) for d in self.stages)


def oracle_net_predicates(obj: Structured, net, x: int) -> tuple[Fraction, Fraction]:
    """``(S ▷^P x, S ∝^P x)`` from the raw definitions over every ``A``."""
    st = as_structure(obj)
    row = st.nbhd[x]
    conv = inf_over(implies(row[a], ONE if net.almost_in(a) else Fraction(0)) for a in st.carrier.subsets())
    acc = inf_over(implies(row[a], ONE if net.often_in(a) else Fraction(0)) for a in st.carrier.subsets())
    return conv, acc


def eventually_periodic_nets(n: int, max_prefix: int, max_period: int) -> Iterator[ExplicitNet]:
    for p in range(max_prefix + 1):
        for q in range(1, max_period + 1):
            for pre in product(range(n), repeat=p):
                for cyc in product(range(n), repeat=q):
                    yield ExplicitNet(pre, cyc)


def subnet_witness(net: ExplicitNet, kernel: SubsetId) -> tuple[ExplicitNet, Callable[[int], int]]:
    """A subnet ``T = S ∘ K`` whose cofinal values are exactly ``kernel``.

    ``K`` is strictly increasing, hence cofinal in the naturals.  Each pass
    of ``K`` walks one period of ``S`` and picks, in order, one position
    carrying each point of ``kernel``.
    """
    wanted = list(bits(kernel))
    if not wanted or kernel & ~net.cofinal_values():
        raise ValueError("sub-kernel must be a nonempty subset of the net's cofinal values")
    start, period = len(net.prefix), len(net.cycle)
    offsets = [net.cycle.index(v) for v in wanted]
    m = len(wanted)

    def index_map(k: int) -> int:
        block, j = divmod(k, m)
        return start + block * period * m + j * period + offsets[j]

    return ExplicitNet((), tuple(wanted)), index_map
