"""Acceptance criteria 1-9, each at its exact tolerance and time budget.

Every test records a single PASS/FAIL line (see ``conftest.py``); the lines
are repeated in the terminal summary.
"""

from __future__ import annotations

import json
import random
import time
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from pathlib import Path

from fuzzitop.checks import candidate_families, check
from fuzzitop.compactness import (
    FamilyGrid, beta1_degree, beta5_degree, cover_degrees, fi_degree, gamma, gamma_p, lc_degree, lpc_degree,
)
from fuzzitop.dsl import T2P_FORMULA, evaluate, format_formula, parse
from fuzzitop.io import space_from_dict
from fuzzitop.maps import all_maps, continuity_degrees, openness_degrees, openness_via_prebase, t2p, t4p
from fuzzitop.named import graded_pair, sierpinski
from fuzzitop.nets import (
    NetRep, adh_p, all_nets, beta2, beta3, beta4, eventually_periodic_nets, oracle_net_predicates,
    pre_accumulates, pre_converges,
)
from fuzzitop.preopen import (
    as_structure, cl_p, is_prebase_degree, p_topological_degree, preclosed_family, tau_p, union_closure,
)
from fuzzitop.product import product_space
from fuzzitop.search import search
from fuzzitop.space import FuzzyFamily, FuzzySpace, crisp_spaces, random_space

from corpus import crisp_upto, everything, goldens, random_corpus
from dsl_gen import closed_formula
from oracles import Oracle

GOLDENS = json.loads((Path(__file__).parent / "goldens.json").read_text())


def fmt(d: Fraction) -> str:
    return f"{d.numerator}/{d.denominator}"


def small_spaces(limit: int = 3) -> tuple:
    return goldens() + crisp_upto(limit) + tuple(s for s in random_corpus() if s.n <= limit)


def class_representatives(n: int) -> list[FuzzySpace]:
    """One crisp space per homeomorphism class on ``n`` points."""
    seen, reps = set(), []
    for s in crisp_spaces(n):
        opens = [a for a in s.carrier.subsets() if s.tau(a) == 1]
        key = min(
            tuple(sorted(sum(1 << p[i] for i in range(n) if a >> i & 1) for a in opens))
            for p in permutations(range(n))
        )
        if key not in seen:
            seen.add(key)
            reps.append(s)
    return reps


# --------------------------------------------------------------------------


def test_criterion_1_goldens(verdict):
    t0 = time.perf_counter()
    s1, s2 = sierpinski(), graded_pair()
    problems = []

    def expect(name, got, want):
        if got != want:
            problems.append(f"{name}: {got} != {want}")

    # the oracle reproduces the frozen goldens ...
    for key, space in (("s1", s1), ("s2", s2)):
        o = Oracle.of(space)
        frozen = GOLDENS[key]
        table = {"".join(sorted(a)) or "{}": fmt(v) for a, v in o.tau_p_table().items()}
        expect(f"oracle {key} tau_p", table, frozen["tau_p"])
        expect(f"oracle {key} t2p", fmt(o.t2p()), frozen["t2p"])
        expect(f"oracle {key} t4p", fmt(o.t4p()), frozen["t4p"])
    expect("oracle s2 cl_p", {x: fmt(v) for x, v in Oracle.of(s2).cl_p(frozenset("b")).items()}, GOLDENS["s2"]["cl_p_b"])

    # ... and so does the package, against the stated values
    expect("tau_p(S1)", [tau_p(s1, a) for a in range(4)], [1, 1, 0, 1])
    expect("tau_p(S2)", [tau_p(s2, a) for a in range(4)], [1, Fraction(3, 4), Fraction(1, 2), 1])
    expect("t2p(S1)", t2p(s1), 0)
    expect("t2p(S2)", t2p(s2), Fraction(1, 2))
    expect("t4p(S2)", t4p(s2), 1)
    expect("cl_p(S2,{b})", cl_p(s2, 0b10).mu, (Fraction(1, 4), Fraction(1)))
    for key, space in (("s1", s1), ("s2", s2)):
        table = {a: fmt(tau_p(space, space.carrier.subset(a if a != "{}" else ""))) for a in GOLDENS[key]["tau_p"]}
        expect(f"package {key} tau_p", table, GOLDENS[key]["tau_p"])
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed < 1
    verdict(1, ok, elapsed, "; ".join(problems))
    assert ok, problems


def test_criterion_2_invariants(verdict):
    t0 = time.perf_counter()
    spaces = crisp_upto(3) + random_corpus(500, 4, 6)
    bad = Counter()
    grid = [Fraction(i, 6) for i in range(7)]
    for k, s in enumerate(spaces):
        st = as_structure(s)
        c = s.carrier
        if not s.tau.leq(st.tau_p):
            bad["tau <= tau_p"] += 1
        if union_closure(st.tau_p) != st.tau_p:
            bad["union_closure(tau_p) = tau_p"] += 1
        rng = random.Random(k)
        families = [s.tau, st.tau_p] + [
            FuzzyFamily(c, tuple(rng.choice(grid) for _ in c.subsets())) for _ in range(3)
        ]
        for fam in families:
            for a in c.subsets():
                k_open, k_pre, _ = cover_degrees(fam, a, st)
                if not k_open <= k_pre:
                    bad["K_open <= K_P"] += 1
        generic = s.n <= 2
        g_p = gamma_p(st, generic=generic)
        if not lpc_degree(st, generic=generic) >= g_p:
            bad["L_PC >= Gamma_P"] += 1
        if g_p != gamma(FuzzySpace(c, st.tau_p), generic=generic):
            bad["Gamma_P(X,tau) = Gamma(X,tau_P)"] += 1
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    verdict(2, ok, elapsed, f"{len(spaces)} spaces" + (f", violations {dict(bad)}" if bad else ""))
    assert ok, dict(bad)


DEGENERATE = {
    "gamma": lambda s, g: gamma(s, g),
    "gamma_p": lambda s, g: gamma_p(s, g),
    "beta1": lambda s, g: beta1_degree(s, generic=g),
    "beta2": lambda s, g: beta2(s),
    "beta3": lambda s, g: beta3(s),
    "beta4": lambda s, g: beta4(s),
    "beta5": lambda s, g: beta5_degree(s, g),
    "lc": lambda s, g: lc_degree(s, g),
    "lpc": lambda s, g: lpc_degree(s, g),
}


def test_criterion_3_compactness_degeneracy(verdict):
    t0 = time.perf_counter()
    off = Counter()
    spaces = everything(500)
    for s in spaces:
        for name, fn in DEGENERATE.items():
            if fn(s, False) != 1:
                off[f"{name} analytic"] += 1
            if s.n <= 3 and fn(s, True) != 1:
                off[f"{name} generic"] += 1
    elapsed = time.perf_counter() - t0
    ok = not off and elapsed < 120
    generic_count = sum(s.n <= 3 for s in spaces)
    verdict(3, ok, elapsed, f"{len(spaces)} analytic, {generic_count} generic" + (f", off {dict(off)}" if off else ""))
    assert ok, dict(off)


def test_criterion_4_theorem_suite(verdict):
    t0 = time.perf_counter()
    spaces = everything(500)
    failing: dict[str, list[FuzzySpace]] = defaultdict(list)
    for s in spaces:
        for r in check(s):
            if r.status == "fail":
                failing[r.id].append(s)
    (t33,) = check(graded_pair(), "T3.3")
    tight_ok = t33.status == "pass" and t33.tight.args == {"A": "{a}"} and t33.tight.slack == 0
    elapsed = time.perf_counter() - t0

    # diagnostics for whatever failed
    notes = [f"{i}: {len(v)}/{len(spaces)} spaces fail" for i, v in sorted(failing.items())]
    if "T3.3" in failing:
        ptop = sum(p_topological_degree(s) == 1 for s in failing["T3.3"])
        notes.append(f"T3.3 failures on P-topological spaces: {ptop}")
    if "T4.5" in failing:
        for form in ("open-point", "nbhd"):
            still = sum(check(s, "T4.5", t3_form=form)[0].status == "fail" for s in failing["T4.5"])
            notes.append(f"T4.5 failures under t3 form {form}: {still}")
    for n in notes:
        print("  " + n)
    ok = not failing and tight_ok and elapsed < 300
    verdict(4, ok, elapsed, f"{len(spaces)} spaces, tight T3.3 witness {'ok' if tight_ok else 'MISSING'}; "
            + ("; ".join(notes) if notes else "no violations"))
    assert ok, notes


@dataclass(frozen=True)
class TailTable:
    """Explicit-tail answers of a net for every subset, plus its kernel.

    The oracle's output depends on a net only through this table, so nets
    sharing a table are checked once per space.
    """

    kernel: int
    almost: tuple[bool, ...]
    often: tuple[bool, ...]

    @classmethod
    def of(cls, net, n: int) -> "TailTable":
        subsets = range(1 << n)
        return cls(net.cofinal_values(), tuple(map(net.almost_in, subsets)), tuple(map(net.often_in, subsets)))

    def almost_in(self, a: int) -> bool:
        return self.almost[a]

    def often_in(self, a: int) -> bool:
        return self.often[a]


def test_criterion_5_net_reduction(verdict):
    t0 = time.perf_counter()
    mismatches = 0
    tables = {n: Counter(TailTable.of(net, n) for net in eventually_periodic_nets(n, 1, 4)) for n in (1, 2, 3)}
    for s in small_spaces(3):
        st = as_structure(s)
        for table, count in tables[s.n].items():
            rep = NetRep(table.kernel)
            for x in range(s.n):
                if oracle_net_predicates(st, table, x) != (pre_converges(st, rep, x), pre_accumulates(st, rep, x)):
                    mismatches += count
    adh_bad = 0
    for k in range(200):
        s = random_space(2 + k % 3, 6, 10_000 + k)
        for net in all_nets(s.carrier):
            if adh_p(s, net) != cl_p(s, net.kernel):
                adh_bad += 1
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and adh_bad == 0 and elapsed < 60
    nets = sum(sum(c.values()) for c in tables.values())
    verdict(5, ok, elapsed, f"{nets} nets, net mismatches {mismatches}, adh_p != cl_p {adh_bad}")
    assert ok


def _refinement_values(s: FuzzySpace, r: int) -> tuple:
    st = as_structure(s)
    grid = FamilyGrid.for_structure(st, r)
    return (
        fi_degree(st.tau_p, grid),
        fi_degree(preclosed_family(st), grid),
        gamma(s, True, r),
        beta1_degree(st, generic=True, refine=r),
        beta5_degree(st, True, r),
    )


def test_criterion_6_refinement_stability(verdict):
    t0 = time.perf_counter()
    spaces = [s for n in (1, 2, 3) for s in class_representatives(n)]
    spaces += list(goldens()) + [random_space(2, 6, k) for k in range(10)] + [random_space(3, 4, k) for k in range(3)]
    unstable = []
    for s in spaces:
        vals = {r: _refinement_values(s, r) for r in (1, 2, 4, 8)}
        for r in (1, 2, 4):
            if vals[r] != vals[2 * r]:
                unstable.append((s, r))
    elapsed = time.perf_counter() - t0
    ok = not unstable and elapsed < 120
    verdict(6, ok, elapsed, f"{len(spaces)} spaces (crisp up to homeomorphism), unstable {len(unstable)}")
    assert ok


def test_criterion_7_prebase_machinery(verdict):
    t0 = time.perf_counter()
    problems = Counter()
    for s in everything(500):
        st = as_structure(s)
        if is_prebase_degree(st.tau_p, st) != 1:
            problems["is_prebase(tau_p)"] += 1
    three = [as_structure(s) for s in crisp_spaces(3)]
    pairs = 0
    for x in three:
        bases = [b for b in candidate_families(x).values() if is_prebase_degree(b, x) == 1]
        for y in three:
            for f in all_maps(x.carrier, y.carrier):
                o_p = openness_degrees(f, x, y)[1]
                for beta in bases:
                    pairs += 1
                    if openness_via_prebase(f, beta, x, y) != o_p:
                        problems["openness via pre-base"] += 1
    factors2 = [sierpinski(), graded_pair(), random_space(2, 6, 1)]
    factors3 = [random_space(3, 6, 2), next(iter(crisp_spaces(3)))]
    for left in factors2:
        for right in factors2 + factors3:
            prod = product_space([left, right])
            for k, factor in enumerate(prod.factors):
                p = prod.projection(k)
                c_p = continuity_degrees(p, prod, factor)[1]
                o_p = openness_degrees(p, prod, factor)[1]
                if (c_p, o_p) != (1, 1):
                    problems["projection degrees"] += 1
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed < 120
    verdict(7, ok, elapsed, f"{pairs} map/pre-base evaluations" + (f", problems {dict(problems)}" if problems else ""))
    assert ok, dict(problems)


def test_criterion_8_dsl(verdict):
    t0 = time.perf_counter()
    not_fixed = 0
    for seed in range(1000):
        text = format_formula(closed_formula(seed))
        if format_formula(parse(text)) != text:
            not_fixed += 1
    t2 = parse(T2P_FORMULA)
    disagree = sum(evaluate(t2, s) != t2p(s) for s in small_spaces(3))
    elapsed = time.perf_counter() - t0
    ok = not_fixed == 0 and disagree == 0 and elapsed < 30
    verdict(8, ok, elapsed, f"round trip failures {not_fixed}, T2 encoding disagreements {disagree}")
    assert ok


def test_criterion_9_converse_search(verdict):
    t0 = time.perf_counter()
    report = search("L3.4", 2, 2, exhaustive=True, converse=True)
    strict = []
    for finding in report.violations:
        s = space_from_dict(finding.space)
        if t4p(s) > t2p(s):
            strict.append(s)
    elapsed = time.perf_counter() - t0
    ok = bool(strict) and elapsed < 30
    verdict(9, ok, elapsed, f"{report.spaces_tried} spaces, {len(strict)} with t4p > t2p")
    assert ok
