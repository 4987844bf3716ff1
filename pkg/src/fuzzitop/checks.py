"""Registry of theorem checks.

Each check turns one graded entailment into a family of inequalities
``lhs <= rhs`` over the arguments it quantifies (subsets, points, maps,
products).  A check passes on a space iff every instance holds exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Callable, Iterable, Iterator

from .carrier import Carrier, bits, submasks
from .compactness import gamma_p, gamma_p_subset, lc_degree, lpc_degree, lpc_subset, beta1_degree, beta5_degree
from .degree import ONE, ZERO, crisp, format_degree, inf_over, sup_over, tnorm
from .maps import (
    PointMap,
    all_maps,
    continuity_degrees,
    identity,
    openness_degrees,
    openness_via_prebase,
    t2p,
    t3p,
    t3p_nbhd,
    t4p,
)
from .named import discrete, graded_pair, indiscrete, sierpinski
from .nets import beta2, beta3, beta4
from .preopen import (
    PreopenStructure,
    as_structure,
    cl_p,
    family_p_topological_degree,
    finite_intersection_closure,
    is_prebase_degree,
    nbhd_set_p,
    p_topological_degree,
    prebase_axiom_degrees,
    subbase_condition_degree,
    trace,
    union_closure,
)
from .product import ProductSpace, product_space
from .space import FuzzyFamily, FuzzySpace


@dataclass
class Instance:
    args: dict[str, str]
    lhs: Fraction
    rhs: Fraction

    @property
    def slack(self) -> Fraction:
        return self.rhs - self.lhs

    def to_dict(self) -> dict:
        return {
            "args": self.args,
            "lhs": format_degree(self.lhs),
            "rhs": format_degree(self.rhs),
            "slack": _signed(self.slack),
        }


def _signed(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass
class CheckResult:
    id: str
    anchor: str
    status: str  # "pass" | "fail" | "skipped"
    degenerate: bool
    instances: int = 0
    violations: list[Instance] = field(default_factory=list)
    tight: Instance | None = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "status": self.status,
            "degenerate": self.degenerate,
            "instances": self.instances,
            "violations": [v.to_dict() for v in self.violations],
            "tight": self.tight.to_dict() if self.tight else None,
            "note": self.note,
        }


@dataclass
class Context:
    """What a check may look at: the space and evaluation options."""

    space: FuzzySpace
    structure: PreopenStructure
    generic_points: int = 2
    t3_form: str = "literal"

    def t3(self) -> Fraction:
        if self.t3_form == "literal":
            return t3p(self.structure)
        if self.t3_form == "open-point":
            return t3p(self.structure, point_closed=False)
        if self.t3_form == "nbhd":
            return t3p_nbhd(self.structure)
        raise ValueError(f"unknown T3 form {self.t3_form!r}")

    @property
    def generic(self) -> bool:
        return self.structure.n <= self.generic_points

    def gp(self) -> Fraction:
        return gamma_p(self.structure, generic=self.generic)

    def gp_subset(self, a: int) -> Fraction:
        if a == 0:
            return ONE  # the empty subspace is trivially compact
        return gamma_p_subset(self.structure, a, generic=self.generic)

    def lpc(self) -> Fraction:
        return lpc_degree(self.structure)

    def fmt(self, a: int) -> str:
        return self.structure.carrier.format(a)


@dataclass(frozen=True)
class TheoremCheck:
    id: str
    anchor: str
    instances: Callable[[Context], Iterable[Instance]]
    hypothesis: str | None = None
    degenerate: bool = False
    note: str = ""


HYPOTHESES: dict[str, Callable[[Context], bool]] = {
    "p-topological": lambda ctx: p_topological_degree(ctx.structure) == ONE,
}


# --------------------------------------------------------------------------
# argument generators


def candidate_families(st: PreopenStructure) -> dict[str, FuzzyFamily]:
    """Subfamilies of ``τ_P`` used as pre-base candidates."""
    c, tp = st.carrier, st.tau_p
    fams = {"tau_p": tp, "tau_p-minus-empty": tp.replace({0: ZERO})}
    if st.tau is not None:
        fams["tau"] = st.tau
    fams["tau_p-points"] = FuzzyFamily(
        c, tuple(d if (len(list(bits(a))) <= 1 or a == c.full) else ZERO for a, d in enumerate(tp.deg))
    )
    for b in range(1, c.full):
        if tp(b) > 0:
            fams[f"tau_p-minus-{c.format(b)}"] = tp.replace({b: ZERO})
    return fams


def subbase_families(st: PreopenStructure) -> dict[str, FuzzyFamily]:
    c = st.carrier
    fams = dict(candidate_families(st))
    fams["half"] = FuzzyFamily.constant(c, Fraction(1, 2))
    fams["zero"] = FuzzyFamily.constant(c, ZERO)
    fams["points"] = FuzzyFamily(c, tuple(ONE if len(list(bits(a))) == 1 else ZERO for a in c.subsets()))
    return fams


def self_maps(c: Carrier) -> Iterator[PointMap]:
    if c.n <= 3:
        yield from all_maps(c, c)
        return
    yield identity(c)
    rng = random.Random(c.n)
    for _ in range(24):
        yield PointMap(c, c, tuple(rng.randrange(c.n) for _ in range(c.n)))


def partner_spaces(n: int) -> list[tuple[str, FuzzySpace]]:
    out = [("s1", sierpinski()), ("s2", graded_pair()), ("indiscrete2", indiscrete(2))]
    return out if n * 2 <= 6 else []


def surjections(dom: Carrier, cod: Carrier) -> Iterator[PointMap]:
    if dom.n == cod.n:
        for perm in permutations(range(cod.n)):
            yield PointMap(dom, cod, perm)
        return
    for f in all_maps(dom, cod):
        if f.is_surjective():
            yield f


# --------------------------------------------------------------------------
# checks


def _t21(ctx: Context):
    st = ctx.structure
    for name, beta in candidate_families(st).items():
        if not beta.leq(st.tau_p):
            continue
        prebase = crisp(is_prebase_degree(beta, st) == ONE)
        generates = crisp(union_closure(beta) == st.tau_p)
        yield Instance({"family": name, "direction": "pre-base => generates"}, prebase, generates)
        yield Instance({"family": name, "direction": "generates => pre-base"}, generates, prebase)


def _is_p_topology(fam: FuzzyFamily) -> bool:
    return fam(fam.carrier.full) == ONE and family_p_topological_degree(fam) == ONE


def _t22(ctx: Context):
    for name, beta in subbase_families(ctx.structure).items():
        axioms = crisp(prebase_axiom_degrees(beta) == (ONE, ONE))
        generated = crisp(_is_p_topology(union_closure(beta)))
        yield Instance({"family": name, "direction": "axioms => P-topology"}, axioms, generated)
        yield Instance({"family": name, "direction": "P-topology => axioms"}, generated, axioms)


def _t23(ctx: Context):
    for name, phi in subbase_families(ctx.structure).items():
        closure = finite_intersection_closure(phi)
        yield Instance(
            {"family": name},
            subbase_condition_degree(phi),
            min(prebase_axiom_degrees(closure)),
        )


def _t31(ctx: Context):
    st, g = ctx.structure, ctx.generic
    reference = ctx.gp()
    others = {
        "beta1": beta1_degree(st, generic=g),
        "beta2": beta2(st),
        "beta3": beta3(st),
        "beta4": beta4(st),
        "beta5": beta5_degree(st, generic=g),
    }
    for name, value in others.items():
        yield Instance({"pair": f"gamma_p <= {name}"}, reference, value)
        yield Instance({"pair": f"{name} <= gamma_p"}, value, reference)


def _l31(ctx: Context):
    st = ctx.structure
    bases = {n: b for n, b in candidate_families(st).items() if b.leq(st.tau_p) and is_prebase_degree(b, st) == ONE}
    for f in self_maps(st.carrier):
        o_p = openness_degrees(f, st, st)[1]
        for name, beta in bases.items():
            via = openness_via_prebase(f, beta, st, st)
            args = {"map": str(list(f.assign)), "pre-base": name}
            yield Instance(dict(args, direction="via <= O_P"), via, o_p)
            yield Instance(dict(args, direction="O_P <= via"), o_p, via)


def _products(ctx: Context) -> Iterator[tuple[str, ProductSpace]]:
    for name, other in partner_spaces(ctx.structure.n):
        yield f"X*{name}", product_space([ctx.structure, other])
        yield f"{name}*X", product_space([other, ctx.structure])


def _l32(ctx: Context):
    for name, prod_space in _products(ctx):
        for s, factor in enumerate(prod_space.factors):
            p = prod_space.projection(s)
            _, c_p, i_p = continuity_degrees(p, prod_space, factor)
            o_p = openness_degrees(p, prod_space, factor)[1]
            for label, value in (("C_P", c_p), ("I_P", i_p), ("O_P", o_p)):
                yield Instance({"product": name, "projection": str(s), "degree": label}, ONE, value)


def _finite_tail_gamma(factors) -> Fraction:
    """``sup_{T finite} inf_{t not in T} Γ_P(X_t)`` over a finite index set."""
    idx = range(len(factors))
    return sup_over(
        inf_over(gamma_p(factors[t]) for t in idx if not t_mask >> t & 1)
        for t_mask in range(1 << len(factors))
    )


def _t32(ctx: Context):
    for name, prod_space in _products(ctx):
        st = prod_space.structure
        lhs = sup_over(
            min(gamma_p_subset(st, u) if u else ONE, sup_over(st.nbhd[x][u] for x in range(st.n)))
            for u in st.carrier.subsets()
        )
        yield Instance({"product": name}, lhs, _finite_tail_gamma(prod_space.factors))


def _l33(ctx: Context):
    st = ctx.structure
    whole = t2p(st)
    for a in range(1, st.carrier.size):
        yield Instance({"A": ctx.fmt(a)}, whole, t2p(trace(st, a)))


def _l34(ctx: Context):
    yield Instance({}, tnorm(t2p(ctx.structure), ctx.gp()), t4p(ctx.structure))


def _l35(ctx: Context):
    yield Instance({}, tnorm(t2p(ctx.structure), ctx.gp()), ctx.t3())


def _t33(ctx: Context):
    st = ctx.structure
    sep = t2p(st)
    full = st.carrier.full
    for a in st.carrier.subsets():
        yield Instance({"A": ctx.fmt(a)}, tnorm(sep, ctx.gp_subset(a)), st.tau_p(full & ~a))


def _d41(ctx: Context):
    yield Instance({}, ctx.gp(), ctx.lpc())


def _t41(ctx: Context):
    st = ctx.structure
    whole = ctx.lpc()
    full = st.carrier.full
    for a in range(1, st.carrier.size):
        yield Instance({"A": ctx.fmt(a)}, tnorm(whole, st.tau_p(full & ~a)), lpc_subset(st, a))


def _dense_degree(st: PreopenStructure, a: int) -> Fraction:
    """``[Cl_P(A) ≡ X] = inf_x Cl_P(A)(x)``."""
    return inf_over(cl_p(st, a).mu)


def _t42(ctx: Context):
    st = ctx.structure
    sep = t2p(st)
    for a in range(1, st.carrier.size):
        lhs = tnorm(tnorm(sep, lpc_subset(st, a)), _dense_degree(st, a))
        yield Instance({"A": ctx.fmt(a)}, lhs, st.tau_p(a))


def _t43(ctx: Context):
    st = ctx.structure
    c, nb = st.carrier, st.nbhd
    full = c.full
    lpc = ctx.lpc()
    base = tnorm(t2p(st), tnorm(lpc, lpc))
    inner_gamma = {v: ctx.gp_subset(v) for v in c.subsets()}
    for x in range(c.n):
        for u in c.subsets():
            if not u >> x & 1:
                continue
            outside = list(bits(full & ~u))
            rhs = sup_over(
                min(nb[x][v], inf_over(nb[y][full & ~v] for y in outside), inner_gamma[v])
                for v in c.subsets()
            )
            yield Instance({"x": c.points[x], "U": ctx.fmt(u)}, tnorm(base, nb[x][u]), rhs)


def _t44(ctx: Context):
    lpc = ctx.lpc()
    yield Instance({"form": "stated"}, tnorm(t2p(ctx.structure), tnorm(lpc, lpc)), ctx.t3())


def _t45(ctx: Context):
    st = ctx.structure
    c = st.carrier
    full = c.full
    base = tnorm(ctx.t3(), ctx.lpc())
    gammas = {v: ctx.gp_subset(v) for v in c.subsets()}
    for a in c.subsets():
        for u in c.subsets():
            lhs = tnorm(tnorm(base, gammas[a]), nbhd_set_p(st, a, u))
            rhs = sup_over(
                min(nbhd_set_p(st, a, v), st.tau_p(full & ~v), gammas[v]) for v in submasks(u)
            )
            yield Instance({"A": ctx.fmt(a), "U": ctx.fmt(u)}, lhs, rhs)


def _codomains(ctx: Context) -> list[tuple[str, FuzzySpace]]:
    out = [("X", ctx.space), ("s1", sierpinski()), ("s2", graded_pair()), ("discrete2", discrete(2))]
    return [(n, y) for n, y in out if y.n <= ctx.space.n]


def _t46(ctx: Context):
    st = ctx.structure
    lpc = ctx.lpc()
    for name, target in _codomains(ctx):
        for f in surjections(st.carrier, target.carrier):
            _, c_p, _ = continuity_degrees(f, st, target)
            o = openness_degrees(f, st, target)[0]
            lhs = tnorm(tnorm(lpc, c_p), o)
            yield Instance({"codomain": name, "map": str(list(f.assign))}, lhs, lc_degree(target))


def _t47(ctx: Context):
    st = ctx.structure
    lpc = ctx.lpc()
    for name, target in _codomains(ctx):
        for f in surjections(st.carrier, target.carrier):
            _, _, i_p = continuity_degrees(f, st, target)
            o_p = openness_degrees(f, st, target)[1]
            lhs = tnorm(tnorm(lpc, i_p), o_p)
            yield Instance({"codomain": name, "map": str(list(f.assign))}, lhs, lpc_degree(target))


def _t48(ctx: Context):
    for name, prod_space in _products(ctx):
        lhs = lpc_degree(prod_space)
        tail = _finite_tail_gamma(prod_space.factors)
        rhs = inf_over(min(lpc_degree(f), tail) for f in prod_space.factors)
        yield Instance({"product": name}, lhs, rhs)


REGISTRY: dict[str, TheoremCheck] = {
    c.id: c
    for c in [
        TheoremCheck("T2.1", "τ_P=β_P^(∪)", _t21),
        TheoremCheck("T2.2", "β_P^(∪)(X)=1", _t22),
        TheoremCheck(
            "T2.3", "φ_P^(∪)(X)=1", _t23,
            note="checked direction: the subbase condition bounds the pre-base axioms of φ^⋒",
        ),
        TheoremCheck("T3.1", "⊨(X,τ)∈Γ_P↔β_i, i=1,2,…,5", _t31, degenerate=True),
        TheoremCheck("L3.1", "where β_P^X is a pre-base", _l31),
        TheoremCheck("L3.2", "(∀s)(s∈S→p_s∈O_P)", _l32),
        TheoremCheck("T3.2", "∃T(T⋐S∧∀t(t∈S−T∧Γ_P(X_t,τ_t)))", _t32, degenerate=True),
        TheoremCheck("L3.3", "T_2^P(X,τ)→T_2^P(A,τ/A)", _l33),
        TheoremCheck("L3.4", "→T_4^P(X,τ)", _l34, hypothesis="p-topological"),
        TheoremCheck("L3.5", "→T_3^P(X,τ)", _l35, hypothesis="p-topological"),
        TheoremCheck("T3.3", "Γ_P(A)→A∈Ϝ_P", _t33),
        TheoremCheck("D4.1", "L_PC(X,τ)≥Γ_P(X,τ)", _d41, degenerate=True),
        TheoremCheck("T4.1", "A∈F_P→(A,τ/A)∈L_PC", _t41),
        TheoremCheck("T4.2", "(Cl_P(A)≡X)→A∈τ_P", _t42, hypothesis="p-topological"),
        TheoremCheck("T4.3", "Cl_P(V)⊆U∧Γ_P(V)", _t43, hypothesis="p-topological"),
        TheoremCheck(
            "T4.4", "(L_PC(X,τ))²→T_3^P(X,τ)", _t44, hypothesis="p-topological",
            note="stated form with (L_PC)²; the proof's (Γ_P(C))² form has the same value, 1, on finite carriers",
        ),
        TheoremCheck("T4.5", "U∈N_A^{P^X}:=(∀x)(x∈A∧U∈N_x^{P^X})", _t45, hypothesis="p-topological"),
        TheoremCheck("T4.6", "O(f)→LC(Y,σ)", _t46, degenerate=True),
        TheoremCheck("T4.7", "I_P(f)⊗O_P(f)→L_PC(Y,σ)", _t47, degenerate=True),
        TheoremCheck("T4.8", "∀s(s∈S∧L_PC(X_s", _t48, degenerate=True),
    ]
}


class UnknownCheck(LookupError):
    def __init__(self, ident: str):
        super().__init__(f"unknown check id {ident!r}; known: {', '.join(REGISTRY)}")


def run_check(check: TheoremCheck, ctx: Context, converse: bool = False) -> CheckResult:
    """Evaluate every instance; with ``converse`` collect strict ``rhs > lhs`` cases instead."""
    result = CheckResult(check.id, check.anchor, "pass", check.degenerate, note=check.note)
    if check.hypothesis and not HYPOTHESES[check.hypothesis](ctx):
        result.status = "skipped"
        result.note = f"skipped: hypothesis {check.hypothesis} fails"
        return result
    for inst in check.instances(ctx):
        result.instances += 1
        if converse:
            if inst.rhs > inst.lhs:
                result.violations.append(inst)
        elif inst.lhs > inst.rhs:
            result.violations.append(inst)
        if result.tight is None or inst.slack < result.tight.slack:
            result.tight = inst
    if result.violations and not converse:
        result.status = "fail"
    if check.degenerate:
        result.note = (result.note + "; " if result.note else "") + "degenerate at finite scale"
    return result


def resolve(ids: str | Iterable[str]) -> list[TheoremCheck]:
    if isinstance(ids, str):
        ids = list(REGISTRY) if ids == "all" else [ids]
    out = []
    for i in ids:
        if i not in REGISTRY:
            raise UnknownCheck(i)
        out.append(REGISTRY[i])
    return out


T3_FORMS = ("literal", "open-point", "nbhd")


def check(
    space: FuzzySpace,
    ids: str | Iterable[str] = "all",
    generic_points: int = 2,
    t3_form: str = "literal",
) -> list[CheckResult]:
    ctx = Context(space, as_structure(space), generic_points, t3_form)
    return [run_check(c, ctx) for c in resolve(ids)]
