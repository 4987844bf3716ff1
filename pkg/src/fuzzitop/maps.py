"""Maps between spaces and the pre-separation degrees."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Mapping

from .carrier import Carrier, CarrierError, SubsetId, bits, submasks
from .degree import ONE, ZERO, implies, inf_over, sup_over
from .preopen import PreconditionError, Structured, as_structure, is_prebase_degree
from .space import FuzzyFamily, same_carrier


@dataclass(frozen=True)
class PointMap:
    domain: Carrier
    codomain: Carrier
    assign: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assign", tuple(self.assign))
        if len(self.assign) != self.domain.n:
            raise CarrierError("a map must assign every domain point")
        for y in self.assign:
            self.codomain.check_point(y)

    @classmethod
    def from_labels(cls, domain: Carrier, codomain: Carrier, table: Mapping[str, str]) -> "PointMap":
        missing = [p for p in domain.points if p not in table]
        if missing:
            raise CarrierError(f"map leaves points unassigned: {missing}")
        return cls(domain, codomain, tuple(codomain.index(table[p]) for p in domain.points))

    def __call__(self, x: int) -> int:
        return self.assign[x]

    def image(self, a: SubsetId) -> SubsetId:
        out = 0
        for x in bits(self.domain.check(a)):
            out |= 1 << self.assign[x]
        return out

    def preimage(self, b: SubsetId) -> SubsetId:
        self.codomain.check(b)
        out = 0
        for x, y in enumerate(self.assign):
            if b >> y & 1:
                out |= 1 << x
        return out

    def is_surjective(self) -> bool:
        return self.image(self.domain.full) == self.codomain.full


def all_maps(domain: Carrier, codomain: Carrier) -> Iterator[PointMap]:
    for assign in product(range(codomain.n), repeat=domain.n):
        yield PointMap(domain, codomain, assign)


def identity(c: Carrier) -> PointMap:
    return PointMap(c, c, tuple(range(c.n)))


def _check(f: PointMap, sx, sy) -> None:
    same_carrier(f.domain, sx.carrier)
    same_carrier(f.codomain, sy.carrier)


def _pull(f: PointMap, source: FuzzyFamily, target: FuzzyFamily) -> Fraction:
    """``inf_B (source(B) -> target(f^-1 B))``."""
    return inf_over(implies(source(b), target(f.preimage(b))) for b in f.codomain.subsets())


def _push(f: PointMap, source: FuzzyFamily, target: FuzzyFamily) -> Fraction:
    """``inf_U (source(U) -> target(f U))``."""
    return inf_over(implies(source(u), target(f.image(u))) for u in f.domain.subsets())


def continuity_degrees(f: PointMap, sx: Structured, sy: Structured) -> tuple[Fraction | None, Fraction, Fraction]:
    """``(C, C_P, I_P)``; ``C`` is ``None`` when either side lacks a topology."""
    x, y = as_structure(sx), as_structure(sy)
    _check(f, x, y)
    cont = _pull(f, y.tau, x.tau) if x.tau is not None and y.tau is not None else None
    pre_cont = _pull(f, y.tau, x.tau_p) if y.tau is not None else None
    irresolute = _pull(f, y.tau_p, x.tau_p)
    if pre_cont is None:
        raise PreconditionError("pre-continuity needs a topology on the codomain")
    return cont, pre_cont, irresolute


def openness_degrees(f: PointMap, sx: Structured, sy: Structured) -> tuple[Fraction | None, Fraction]:
    """``(O, O_P)``; ``O`` is ``None`` when either side lacks a topology."""
    x, y = as_structure(sx), as_structure(sy)
    _check(f, x, y)
    opened = _push(f, x.tau, y.tau) if x.tau is not None and y.tau is not None else None
    return opened, _push(f, x.tau_p, y.tau_p)


def openness_via_prebase(f: PointMap, beta: FuzzyFamily, sx: Structured, sy: Structured) -> Fraction:
    """``inf_B (beta(B) -> σ_P(f B))`` for a pre-base ``beta`` of the domain."""
    x, y = as_structure(sx), as_structure(sy)
    _check(f, x, y)
    if is_prebase_degree(beta, x) != ONE:
        raise PreconditionError("family is not a pre-base of the domain")
    return _push(f, beta, y.tau_p)


# --------------------------------------------------------------------------
# separation


def t2p(obj: Structured) -> Fraction:
    """Pre-Hausdorff degree.

    For a fixed ``B`` around ``x`` the best disjoint ``C`` around ``y`` is the
    complement of ``B``, since pre-neighbourhood degrees are monotone.
    """
    st = as_structure(obj)
    c, nb = st.carrier, st.nbhd
    full = c.full
    return inf_over(
        sup_over(min(nb[x][b], nb[y][full & ~b]) for b in c.subsets())
        for x in range(c.n)
        for y in range(x + 1, c.n)
    )


def _separated(st, a: SubsetId, b: SubsetId) -> Fraction:
    """``sup {min(τ_P(U), τ_P(V)) : U ∩ V = ∅, A ⊆ U, B ⊆ V}``."""
    full = st.carrier.full
    tp = st.tau_p
    best = ZERO
    for u_extra in submasks(full & ~(a | b)):
        u = a | u_extra
        tu = tp(u)
        if tu <= best:
            continue
        for v_extra in submasks(full & ~(u | b)):
            score = min(tu, tp(b | v_extra))
            if score > best:
                best = score
                if best == tu:
                    break
    return best


def _normality_term(st, a: SubsetId, b: SubsetId) -> Fraction:
    full = st.carrier.full
    closed = min(st.tau_p(full & ~a), st.tau_p(full & ~b))
    return min(ONE, 1 - closed + _separated(st, a, b))


def t4p(obj: Structured) -> Fraction:
    """Pre-normality degree over all disjoint pairs of sets."""
    st = as_structure(obj)
    return inf_over(_normality_term(st, a, b) for a, b in st.carrier.disjoint_pairs())


def t3p(obj: Structured, point_closed: bool = True) -> Fraction:
    """Pre-regularity: the pre-normality formula with the first set a singleton.

    With ``point_closed=False`` the singleton is treated as crisply closed,
    so only the pre-closedness of the second set enters the antecedent.
    """
    st = as_structure(obj)
    c = st.carrier
    full = c.full
    worst = ONE
    for x in range(c.n):
        for b in submasks(full & ~(1 << x)):
            if point_closed:
                term = _normality_term(st, 1 << x, b)
            else:
                term = min(ONE, 1 - st.tau_p(full & ~b) + _separated(st, 1 << x, b))
            worst = min(worst, term)
    return worst


def t3p_nbhd(obj: Structured) -> Fraction:
    """Neighbourhood form of pre-regularity.

    ``inf_{x in W} min(1, 1 - τ_P(W) + sup_{B ⊆ W} min(N^P_x(B), inf_{y ∉ W} N^P_y(B^c)))``.
    """
    st = as_structure(obj)
    c, nb = st.carrier, st.nbhd
    full = c.full
    worst = ONE
    for w in range(1, c.size):
        outside = list(bits(full & ~w))
        for x in bits(w):
            inner = sup_over(
                min(nb[x][b], inf_over(nb[y][full & ~b] for y in outside))
                for b in submasks(w)
            )
            worst = min(worst, min(ONE, 1 - st.tau_p(w) + inner))
    return worst
