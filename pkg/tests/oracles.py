"""Brute-force reference evaluators.

Everything here works on frozensets of point labels and spells out the raw
sup/inf expressions with no shortcuts, so it shares no code paths with the
package beyond reading a space's degrees.  Run as a script to print the
golden values that ``goldens.json`` pins.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import chain, combinations

ONE, ZERO = Fraction(1), Fraction(0)


def powerset(points):
    pts = list(points)
    return [frozenset(c) for c in chain.from_iterable(combinations(pts, k) for k in range(len(pts) + 1))]


def lowest(values):
    values = list(values)
    return min(values) if values else ONE


def highest(values):
    values = list(values)
    return max(values) if values else ZERO


class Oracle:
    def __init__(self, points, tau):
        """``tau`` maps frozensets of labels to degrees; missing sets are 0."""
        self.points = list(points)
        self.X = frozenset(self.points)
        self.P = powerset(self.points)
        self.tau = {a: Fraction(tau.get(a, 0)) for a in self.P}

    @classmethod
    def of(cls, space):
        c = space.carrier
        return cls(c.points, {frozenset(c.labels(a)): space.tau(a) for a in c.subsets()})

    # crisp-argument operators on τ
    def closure(self, a):
        return {x: 1 - highest(self.tau[b] for b in self.P if x in b and not (b & a)) for x in self.points}

    def interior(self, mu):
        return {
            x: highest(min(self.tau[b], lowest(mu[y] for y in b)) for b in self.P if x in b)
            for x in self.points
        }

    def tau_p(self, a):
        cl = self.closure(a)
        inner = self.interior(cl)
        return lowest(inner[x] for x in a)

    def tau_p_table(self):
        return {a: self.tau_p(a) for a in self.P}

    def nbhd_p(self, x, a, tp=None):
        tp = tp or self.tau_p_table()
        return highest(tp[b] for b in self.P if x in b and b <= a)

    def cl_p(self, a):
        tp = self.tau_p_table()
        return {x: 1 - self.nbhd_p(x, self.X - a, tp) for x in self.points}

    def t2p(self):
        tp = self.tau_p_table()
        nb = {(x, a): self.nbhd_p(x, a, tp) for x in self.points for a in self.P}
        return lowest(
            highest(min(nb[x, b], nb[y, c]) for b in self.P for c in self.P if not (b & c))
            for x in self.points
            for y in self.points
            if x != y
        )

    def _normal(self, tp, a, b):
        sep = highest(
            min(tp[u], tp[v]) for u in self.P for v in self.P if not (u & v) and a <= u and b <= v
        )
        return min(ONE, 1 - min(tp[self.X - a], tp[self.X - b]) + sep)

    def t4p(self):
        tp = self.tau_p_table()
        return lowest(self._normal(tp, a, b) for a in self.P for b in self.P if not (a & b))

    def t3p(self):
        tp = self.tau_p_table()
        return lowest(
            self._normal(tp, frozenset({x}), b) for x in self.points for b in self.P if x not in b
        )

    def p_topological(self):
        tp = self.tau_p_table()
        return lowest(min(ONE, 1 - min(tp[a], tp[b]) + tp[a & b]) for a in self.P for b in self.P)


def union_closure(points, beta):
    """``sup over subfamilies R with ∪R = A of inf beta`` by listing every subfamily."""
    P = powerset(points)
    out = {a: ZERO for a in P}
    for k in range(len(P) + 1):
        for fam in combinations(P, k):
            u = frozenset().union(*fam)
            out[u] = max(out[u], lowest(beta[b] for b in fam))
    return out


def _fmt(d):
    return f"{d.numerator}/{d.denominator}"


def golden_values():
    s1 = Oracle("ab", {frozenset(): 1, frozenset("a"): 1, frozenset("ab"): 1})
    s2 = Oracle(
        "ab",
        {frozenset(): 1, frozenset("a"): Fraction(3, 4), frozenset("b"): Fraction(1, 2), frozenset("ab"): 1},
    )

    def table(o):
        return {"".join(sorted(a)) or "{}": _fmt(v) for a, v in o.tau_p_table().items()}

    return {
        "s1": {"tau_p": table(s1), "t2p": _fmt(s1.t2p()), "t4p": _fmt(s1.t4p()), "t3p": _fmt(s1.t3p())},
        "s2": {
            "tau_p": table(s2),
            "t2p": _fmt(s2.t2p()),
            "t4p": _fmt(s2.t4p()),
            "t3p": _fmt(s2.t3p()),
            "cl_p_b": {x: _fmt(v) for x, v in s2.cl_p(frozenset("b")).items()},
        },
    }


if __name__ == "__main__":
    print(json.dumps(golden_values(), indent=2, sort_keys=True))
