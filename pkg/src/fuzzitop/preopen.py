"""Pre-open structure of a space and the pre-base / pre-subbase machinery.

All later degree computations consume a :class:`PreopenStructure`, which
holds the memoized pre-open family together with its neighbourhood table.
A structure can come from a space (the usual case), from the trace of a
parent structure on a subset, or from a product of spaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Union

from .carrier import Carrier, SubsetId, bits, submasks
from .degree import ONE, ZERO, implies, inf_over
from .space import (
    FuzzyFamily,
    FuzzyPointSet,
    FuzzySpace,
    nbhd_table,
    same_carrier,
    trace_family,
)


class PreconditionError(ValueError):
    """An operation's stated precondition does not hold for its inputs."""


@dataclass(frozen=True, eq=False)
class PreopenStructure:
    """Carrier plus pre-open family; ``space`` is set when derived from a space."""

    carrier: Carrier
    tau_p: FuzzyFamily
    space: FuzzySpace | None = field(default=None)

    @cached_property
    def nbhd(self) -> tuple[tuple[Fraction, ...], ...]:
        return nbhd_table(self.carrier, self.tau_p)

    @property
    def tau(self) -> FuzzyFamily | None:
        return self.space.tau if self.space is not None else None

    @property
    def n(self) -> int:
        return self.carrier.n


Structured = Union[FuzzySpace, PreopenStructure]


def preopen_family(s: FuzzySpace) -> FuzzyFamily:
    """``tau_P(A) = inf_{x in A} Int(Cl(A))(x)`` for every subset."""
    c = s.carrier
    nb = nbhd_table(c, s.tau)
    full = c.full
    out = []
    for a in c.subsets():
        if a == 0:
            out.append(ONE)
            continue
        comp = full & ~a
        cl = [1 - nb[y][comp] for y in range(c.n)]
        value = ONE
        for x in bits(a):
            # Int(cl)(x): best B containing x, scored by min(tau(B), inf cl on B)
            best = ZERO
            for b in c.subsets():
                if not b >> x & 1 or s.tau(b) <= best:
                    continue
                score = min(s.tau(b), min(cl[y] for y in bits(b)))
                if score > best:
                    best = score
            if best < value:
                value = best
        out.append(value)
    return FuzzyFamily(c, tuple(out))


@lru_cache(maxsize=4096)
def structure(s: FuzzySpace) -> PreopenStructure:
    return PreopenStructure(s.carrier, preopen_family(s), s)


def as_structure(obj) -> PreopenStructure:
    if isinstance(obj, PreopenStructure):
        return obj
    if isinstance(obj, FuzzySpace):
        return structure(obj)
    st = getattr(obj, "structure", None)
    if isinstance(st, PreopenStructure):
        return st
    raise TypeError(f"expected a space or pre-open structure, got {type(obj).__name__}")


def trace(obj: Structured, a: SubsetId) -> PreopenStructure:
    """Structure on ``A`` whose pre-open family is the trace ``tau_P/A``."""
    st = as_structure(obj)
    fam = trace_family(st.tau_p, a)
    return PreopenStructure(fam.carrier, fam)


def from_family(fam: FuzzyFamily) -> PreopenStructure:
    """Treat an arbitrary family as a standalone pre-open family."""
    return PreopenStructure(fam.carrier, fam)


# --------------------------------------------------------------------------
# point degrees


def tau_p(obj: Structured, a: SubsetId) -> Fraction:
    st = as_structure(obj)
    return st.tau_p(st.carrier.check(a))


def f_p(obj: Structured, a: SubsetId) -> Fraction:
    """Degree to which ``A`` is pre-closed."""
    st = as_structure(obj)
    return st.tau_p(st.carrier.complement(a))


def preclosed_family(obj: Structured) -> FuzzyFamily:
    st = as_structure(obj)
    full = st.carrier.full
    return FuzzyFamily(st.carrier, tuple(st.tau_p(full & ~a) for a in st.carrier.subsets()))


def nbhd_p(obj: Structured, x: int, a: SubsetId) -> Fraction:
    st = as_structure(obj)
    st.carrier.check_point(x)
    return st.nbhd[x][st.carrier.check(a)]


def cl_p(obj: Structured, a: SubsetId) -> FuzzyPointSet:
    st = as_structure(obj)
    comp = st.carrier.complement(a)
    return FuzzyPointSet(st.carrier, tuple(1 - st.nbhd[x][comp] for x in range(st.n)))


def nbhd_set_p(obj: Structured, a: SubsetId, u: SubsetId) -> Fraction:
    """``U in N_A``: every point of ``A`` has ``U`` as a pre-neighbourhood."""
    st = as_structure(obj)
    return inf_over(st.nbhd[x][u] for x in bits(a))


def family_p_topological_degree(fam: FuzzyFamily) -> Fraction:
    """``inf_{A,B} (min(fam(A), fam(B)) -> fam(A ∩ B))``."""
    size = fam.carrier.size
    worst = ONE
    for a in range(size):
        fa = fam(a)
        for b in range(a + 1, size):
            v = implies(min(fa, fam(b)), fam(a & b))
            if v < worst:
                worst = v
    return worst


def p_topological_degree(obj: Structured) -> Fraction:
    return family_p_topological_degree(as_structure(obj).tau_p)


def is_p_topological(obj: Structured) -> bool:
    return p_topological_degree(obj) == ONE


# --------------------------------------------------------------------------
# generated families


def union_closure(beta: FuzzyFamily) -> FuzzyFamily:
    """``beta^(∪)(A) = sup over covers {B_i} of A of inf beta(B_i)``.

    For a threshold ``t`` the best cover using only sets of degree ``>= t``
    is the family of all such ``B ⊆ A``; so the sup is the largest degree at
    which those sets already exhaust ``A``.  Walking the subsets of ``A`` in
    descending degree order finds it without touching individual covers.
    """
    c = beta.carrier
    out = []
    for a in c.subsets():
        if a == 0:
            out.append(ONE)  # the empty cover
            continue
        covered = 0
        result = ZERO
        for b in sorted(submasks(a), key=beta, reverse=True):
            covered |= b
            if covered == a:
                result = beta(b)
                break
        out.append(result)
    return FuzzyFamily(c, tuple(out))


def finite_intersection_closure(phi: FuzzyFamily) -> FuzzyFamily:
    """``phi^⋒(A) = sup over finite subfamilies with intersection A of their inf``.

    The empty subfamily has intersection X and degree 1.  Only supersets of
    ``A`` can take part, and the same threshold argument as for unions applies.
    """
    c = phi.carrier
    full = c.full
    out = []
    for a in c.subsets():
        if a == full:
            out.append(ONE)
            continue
        supersets = [a | extra for extra in submasks(full & ~a)]
        meet_so_far = full
        result = ZERO
        for b in sorted(supersets, key=phi, reverse=True):
            meet_so_far &= b
            if meet_so_far == a:
                result = phi(b)
                break
        out.append(result)
    return FuzzyFamily(c, tuple(out))


def is_prebase_degree(beta: FuzzyFamily, obj: Structured) -> Fraction:
    """``inf_{x,A} (N^P_x(A) -> sup_{x in B ⊆ A} beta(B))``; 1 means pre-base.

    Raises :class:`PreconditionError` unless ``beta <= tau_P`` pointwise.
    """
    st = as_structure(obj)
    same_carrier(beta.carrier, st.carrier)
    over = [a for a in st.carrier.subsets() if beta(a) > st.tau_p(a)]
    if over:
        raise PreconditionError(
            "family is not contained in tau_P at "
            + ", ".join(st.carrier.format(a) for a in over)
        )
    via_beta = nbhd_table(st.carrier, beta)
    worst = ONE
    for x in range(st.n):
        for a in st.carrier.subsets():
            v = implies(st.nbhd[x][a], via_beta[x][a])
            if v < worst:
                worst = v
    return worst


def is_prebase(beta: FuzzyFamily, obj: Structured) -> bool:
    return is_prebase_degree(beta, obj) == ONE


def prebase_axiom_degrees(beta: FuzzyFamily) -> tuple[Fraction, Fraction]:
    """Degrees of the two pre-base axioms: ``beta^(∪)(X)`` and the local
    intersection condition ``beta(A) ∧ beta(B) ∧ x in A∩B -> ∃C beta(C), x∈C⊆A∩B``."""
    c = beta.carrier
    first = union_closure(beta)(c.full)
    local = nbhd_table(c, beta)
    second = ONE
    for a in c.subsets():
        for b in c.subsets():
            ab = a & b
            if not ab:
                continue
            lhs = min(beta(a), beta(b))
            for x in bits(ab):
                v = implies(lhs, local[x][ab])
                if v < second:
                    second = v
    return first, second


def subbase_condition_degree(phi: FuzzyFamily) -> Fraction:
    return union_closure(phi)(phi.carrier.full)
