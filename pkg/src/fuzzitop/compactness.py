"""Fuzzy covers and the compactness family of degrees.

Two evaluation paths exist for every quantifier over fuzzy families:

* the analytic path, which uses that on a finite carrier every cut of a
  family is finite (so ``FF`` is 1) and that the best subfamily is the
  family itself;
* the generic path, which ranges ``ℜ`` over every family whose values lie
  in a finite :class:`FamilyGrid` and evaluates each formula row by row.

The generic path works on integer numerators over the grid's common
denominator, vectorized with numpy in fixed-size chunks of a mixed-radix
index space, so any chunk partition gives the same min/max.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod
from typing import Iterable, Iterator, Sequence

import numpy as np

from .carrier import MAX_FAMILY_POINTS, Carrier, CarrierError, SubsetId, bits
from .degree import ONE, ZERO, implies, inf_over, sup_over, tnorm
from .preopen import Structured, as_structure, trace
from .space import FuzzyFamily, FuzzySpace, nbhd_table, same_carrier, trace_family

#: rows per numpy chunk
CHUNK = 1 << 20
#: refuse generic scans larger than this many rows
ROW_BUDGET = 400_000_000

ORDERS = ("crisp", "fuzzy")


# --------------------------------------------------------------------------
# grids


@dataclass(frozen=True)
class FamilyGrid:
    """Finite ascending set of degrees that family values are drawn from."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(sorted(set(self.values) | {ZERO, ONE}))
        object.__setattr__(self, "values", vals)

    @classmethod
    def build(cls, families: Iterable[FuzzyFamily] = (), refine: int = 1) -> "FamilyGrid":
        """``{0,1}`` ∪ every family value and its complement ∪ ``{i/refine}``."""
        if refine < 1:
            raise ValueError("grid refinement must be >= 1")
        vals = {Fraction(i, refine) for i in range(refine + 1)}
        for fam in families:
            for d in fam.deg:
                vals.add(d)
                vals.add(1 - d)
        return cls(tuple(vals))

    @classmethod
    def for_structure(cls, obj: Structured, refine: int = 1, extra: Iterable[FuzzyFamily] = ()) -> "FamilyGrid":
        st = as_structure(obj)
        fams = [st.tau_p, *extra]
        if st.tau is not None:
            fams.append(st.tau)
        return cls.build(fams, refine)

    @property
    def denominator(self) -> int:
        return lcm(*(v.denominator for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def scaled(self, values: Sequence[Fraction] | None = None) -> np.ndarray:
        d = self.denominator
        vals = self.values if values is None else values
        return np.array([int(v * d) for v in vals], dtype=np.int64)

    def below(self, bound: Fraction) -> tuple[Fraction, ...]:
        return tuple(v for v in self.values if v <= bound)


def _scale(fam: FuzzyFamily, d: int) -> np.ndarray:
    out = []
    for v in fam.deg:
        num = v * d
        if num.denominator != 1:
            raise ValueError(f"degree {v} is not on the grid denominator {d}")
        out.append(int(num))
    return np.array(out, dtype=np.int64)


# --------------------------------------------------------------------------
# scalar predicates


def k_degree(r: FuzzyFamily, a: SubsetId) -> Fraction:
    """``K(ℜ,A) = inf_{x in A} sup_{B ∋ x} ℜ(B)``."""
    c = r.carrier
    c.check(a)
    return inf_over(
        sup_over(r(b) for b in c.subsets() if b >> x & 1) for x in bits(a)
    )


def family_subset_degree(r: FuzzyFamily, t: FuzzyFamily) -> Fraction:
    """``[ℜ ⊆ T] = inf_B (ℜ(B) -> T(B))``."""
    same_carrier(r.carrier, t.carrier)
    return inf_over(implies(x, y) for x, y in zip(r.deg, t.deg))


def family_order_degree(p: FuzzyFamily, r: FuzzyFamily, order: str = "crisp") -> Fraction:
    """``[℘ ≤ ℜ]``: crisp pointwise order, or its graded inclusion."""
    if order == "crisp":
        return ONE if p.leq(r) else ZERO
    if order == "fuzzy":
        return family_subset_degree(p, r)
    raise ValueError(f"unknown family order {order!r}")


def cover_degrees(
    r: FuzzyFamily, a: SubsetId, obj: Structured, phi: FuzzyFamily | None = None
) -> tuple[Fraction | None, Fraction, Fraction | None]:
    """``(K∘, K_P, K_φ)`` for family ``ℜ`` over ``A``.

    ``K∘`` needs the underlying topology and is ``None`` for bare pre-open
    structures; ``K_φ`` is ``None`` unless ``phi`` is given.
    """
    st = as_structure(obj)
    same_carrier(r.carrier, st.carrier)
    k = k_degree(r, a)
    k_open = tnorm(k, family_subset_degree(r, st.tau)) if st.tau is not None else None
    k_pre = tnorm(k, family_subset_degree(r, st.tau_p))
    k_phi = tnorm(k, family_subset_degree(r, phi)) if phi is not None else None
    return k_open, k_pre, k_phi


def ff_degree(p: FuzzyFamily) -> Fraction:
    """``FF(℘) = 1 - inf{δ : the cut ℘_δ is finite}``.

    Candidate levels are 0 and the family's own values; a cut of a family
    over a finite carrier is a finite set of subsets, so every candidate
    qualifies and the infimum is 0.
    """
    candidates = [ZERO, *p.values()]
    finite = [d for d in candidates if _cut_is_finite(p, d)]
    return 1 - min(finite, default=ONE)


def _cut_is_finite(p: FuzzyFamily, delta: Fraction) -> bool:
    cut = [b for b in p.carrier.subsets() if p(b) >= delta]
    return len(cut) <= p.carrier.size


def common_point_degree(p: FuzzyFamily) -> Fraction:
    """``∃x ∀B (B ∈ ℘ -> x ∈ B) = sup_x inf_{B ∌ x} (1 - ℘(B))``."""
    c = p.carrier
    return sup_over(
        inf_over(1 - p(b) for b in c.subsets() if not b >> x & 1) for x in range(c.n)
    )


# --------------------------------------------------------------------------
# vectorized scans
#
# A scan ranges over the product of per-subset value lists.  The low-order
# columns form an "inner" block, materialized once; each combination of the
# remaining columns is a scalar "outer" assignment.  Every row predicate
# here is a min/max of per-column terms, so column maxima over the inner
# block are cached and combined with the outer scalars.

_NEG = -(1 << 40)


class _Scan:
    def __init__(self, columns: Sequence[np.ndarray], chunk: int = CHUNK):
        total = prod(len(col) for col in columns)
        if total > ROW_BUDGET:
            raise CarrierError(f"generic scan needs {total} families, budget is {ROW_BUDGET}")
        self.columns = [np.asarray(col, dtype=np.int64) for col in columns]
        self.total = total
        split = 0
        size = 1
        while split < len(columns) and size * len(columns[split]) <= chunk:
            size *= len(columns[split])
            split += 1
        self.split = split
        self.inner_size = size
        idx = np.arange(size, dtype=np.int64)
        self.inner: list[np.ndarray] = []
        for col in self.columns[:split]:
            idx, digit = np.divmod(idx, len(col))
            self.inner.append(col[digit])
        self._cache: dict = {}

    def blocks(self) -> Iterator["_Block"]:
        outer_cols = self.columns[self.split:]
        for outer in product_values(outer_cols):
            yield _Block(self, outer)

    def inner_max(self, cols: tuple[int, ...], offset: np.ndarray | None, key) -> np.ndarray | None:
        inner_cols = [j for j in cols if j < self.split]
        if not inner_cols:
            return None
        cache_key = (cols, key)
        hit = self._cache.get(cache_key)
        if hit is None:
            terms = [self.inner[j] - (offset[j] if offset is not None else 0) for j in inner_cols]
            hit = np.maximum.reduce(terms) if len(terms) > 1 else terms[0]
            self._cache[cache_key] = hit
        return hit


def product_values(columns: Sequence[np.ndarray]) -> Iterator[tuple[int, ...]]:
    """Mixed-radix walk over column values, first column fastest."""
    if not columns:
        yield ()
        return
    digits = [0] * len(columns)
    while True:
        yield tuple(int(col[i]) for col, i in zip(columns, digits))
        j = 0
        while j < len(columns):
            digits[j] += 1
            if digits[j] < len(columns[j]):
                break
            digits[j] = 0
            j += 1
        if j == len(columns):
            return


class _Block:
    """One outer assignment: ``inner_size`` rows sharing their outer columns."""

    def __init__(self, scan: _Scan, outer: tuple[int, ...]):
        self.scan = scan
        self.outer = outer

    @property
    def size(self) -> int:
        return self.scan.inner_size

    def colmax(self, cols: tuple[int, ...], offset: np.ndarray | None = None, key=None) -> np.ndarray:
        """Row-wise ``max_{j in cols} (f_j - offset_j)``; ``_NEG`` for no columns."""
        split = self.scan.split
        outer = _NEG
        for j in cols:
            if j >= split:
                v = self.outer[j - split] - (int(offset[j]) if offset is not None else 0)
                if v > outer:
                    outer = v
        inner = self.scan.inner_max(cols, offset, key)
        if inner is None:
            return np.full(self.size, outer, dtype=np.int64)
        return np.maximum(inner, outer)

    def row(self, i: int) -> np.ndarray:
        return np.array([col[i] for col in self.scan.inner] + list(self.outer), dtype=np.int64)


class _Terms:
    """Row predicates for families over one carrier, at denominator ``d``."""

    def __init__(self, c: Carrier, d: int):
        self.c = c
        self.d = d
        self.containing = [tuple(b for b in c.subsets() if b >> x & 1) for x in range(c.n)]
        self.avoiding = [tuple(b for b in c.subsets() if not b >> x & 1) for x in range(c.n)]
        self.every = tuple(c.subsets())

    def k(self, blk: _Block, a: SubsetId) -> np.ndarray:
        out = np.full(blk.size, self.d, dtype=np.int64)
        for x in bits(a):
            np.minimum(out, blk.colmax(self.containing[x]), out=out)
        return out

    def inclusion(self, blk: _Block, t: np.ndarray, key) -> np.ndarray:
        return self.d - np.maximum(blk.colmax(self.every, t, key), 0)

    def common_point(self, blk: _Block) -> np.ndarray:
        worst = np.full(blk.size, self.d, dtype=np.int64)
        for x in range(self.c.n):
            np.minimum(worst, blk.colmax(self.avoiding[x]), out=worst)
        return self.d - np.maximum(worst, 0)

    def ff(self, blk: _Block) -> np.ndarray:
        # every cut of a family over a finite carrier is finite: inf of levels is 0
        return np.full(blk.size, self.d, dtype=np.int64)


def _tnorm(a, b, d):
    return np.maximum(a + b - d, 0)


def _implies(a, b, d):
    return np.minimum(d, d - a + b)


def _family_columns(grid: FamilyGrid, c: Carrier, upper: FuzzyFamily | None = None, empty_zero: bool = False):
    cols = []
    for b in c.subsets():
        if empty_zero and b == 0:
            vals: Sequence[Fraction] = (ZERO,)
        elif upper is not None:
            vals = grid.below(upper(b))
        else:
            vals = grid.values
        cols.append(grid.scaled(vals))
    return cols


def _require_generic(c: Carrier) -> None:
    c.require(MAX_FAMILY_POINTS, "family quantification")


@dataclass
class ScanStats:
    """Bookkeeping from a generic scan: rows seen and rows needing fallback."""

    rows: int = 0
    fallback: int = 0


# --------------------------------------------------------------------------
# fI


def fi_degree(
    r: FuzzyFamily, grid: FamilyGrid | None = None, generic: bool = True
) -> Fraction:
    """``fI(ℜ) = inf_{℘ ≤ ℜ} (FF(℘) -> ∃x ∀B (B ∈ ℘ -> x ∈ B))``.

    The consequent is antitone in ``℘``, so ``℘ = ℜ`` is the worst case once
    ``FF`` is 1; the generic scan uses that value as a proven floor and stops
    as soon as some row attains it.
    """
    c = r.carrier
    if not generic:
        return implies(ff_degree(r), common_point_degree(r))
    _require_generic(c)
    grid = FamilyGrid.build([r]) if grid is None else FamilyGrid(grid.values + tuple(r.deg))
    d = grid.denominator
    terms = _Terms(c, d)
    floor = int(common_point_degree(r) * d)
    scan = _Scan(_family_columns(grid, c, upper=r))
    best = d
    for blk in scan.blocks():
        best = min(best, int(_implies(terms.ff(blk), terms.common_point(blk), d).min()))
        if best <= floor:
            break
    return Fraction(best, d)


# --------------------------------------------------------------------------
# Γ and relatives


def _best_subfamily(r_row: np.ndarray, grid: FamilyGrid, c: Carrier, order: str) -> int:
    """``sup_℘ ([℘ ≤ ℜ] ∧ K(℘,X) ⊗ FF(℘))`` for a single family, by enumeration."""
    d = grid.denominator
    terms = _Terms(c, d)
    if order == "crisp":
        cols = [grid.scaled(grid.below(Fraction(int(v), d))) for v in r_row]
    else:
        cols = [grid.scaled() for _ in r_row]
    best = 0
    for blk in _Scan(cols).blocks():
        score = _tnorm(terms.k(blk, c.full), terms.ff(blk), d)
        if order == "fuzzy":
            # [℘ ≤ ℜ] = d - max(0, max_B (℘(B) - ℜ(B)))
            score = np.minimum(score, terms.inclusion(blk, r_row, "order"))
        best = max(best, int(score.max()))
        if best >= d:
            break
    return best


def compactness_generic(
    t: FuzzyFamily,
    grid: FamilyGrid,
    order: str = "crisp",
    stats: ScanStats | None = None,
) -> Fraction:
    """``inf_ℜ (K(ℜ,X) ⊗ [ℜ ⊆ T] -> sup_{℘ ≤ ℜ} K(℘,X) ⊗ FF(℘))`` over grid families.

    ``T`` is the family the cover is required to consist of: τ gives Γ,
    τ_P gives Γ_P and a pre-subbase gives β₁.  The value of ``ℜ(∅)`` is
    pinned to 0: the empty set covers no point, and a positive value can
    only lower the antecedent.

    Each row first tries the subfamily ``℘ = ℜ``; when that already makes
    the implication 1, or matches the upper bound ``K(ℜ,X)`` of the sup, the
    row is settled.  Remaining rows fall back to enumerating ``℘``.
    """
    if order not in ORDERS:
        raise ValueError(f"unknown family order {order!r}")
    c = t.carrier
    _require_generic(c)
    grid = FamilyGrid(grid.values + tuple(t.deg))
    d = grid.denominator
    terms = _Terms(c, d)
    t_scaled = _scale(t, d)
    stats = stats if stats is not None else ScanStats()
    best = d
    for blk in _Scan(_family_columns(grid, c, empty_zero=True)).blocks():
        k = terms.k(blk, c.full)
        antecedent = _tnorm(k, terms.inclusion(blk, t_scaled, "t"), d)
        lower = _tnorm(k, terms.ff(blk), d)
        values = _implies(antecedent, lower, d)
        settled = values == d
        if order == "crisp":
            # the sup over ℘ ≤ ℜ never exceeds K(ℜ,X)
            settled |= lower == k
        stats.rows += blk.size
        for i in np.flatnonzero(~settled):
            stats.fallback += 1
            sup = _best_subfamily(blk.row(i), grid, c, order)
            values[i] = min(d, d - antecedent[i] + sup)
        best = min(best, int(values.min()))
    return Fraction(best, d)


def _grid_for(obj: Structured, refine: int, grid: FamilyGrid | None, extra=()) -> FamilyGrid:
    base = FamilyGrid.for_structure(obj, refine, extra)
    return base if grid is None else FamilyGrid(base.values + grid.values)


def gamma(
    s: FuzzySpace,
    generic: bool = False,
    refine: int = 1,
    grid: FamilyGrid | None = None,
    order: str = "crisp",
) -> Fraction:
    """Compactness degree ``Γ(X,τ)``.

    Analytically 1: for every ``ℜ`` the subfamily ``℘ = ℜ`` has ``FF = 1`` and
    ``K(℘,X) = K(ℜ,X) >= K∘(ℜ,X)``.
    """
    if not generic:
        return ONE
    return compactness_generic(s.tau, _grid_for(s, refine, grid), order)


def gamma_p(
    obj: Structured,
    generic: bool = False,
    refine: int = 1,
    grid: FamilyGrid | None = None,
    order: str = "crisp",
) -> Fraction:
    """Strong compactness ``Γ_P``: covers are graded by ``τ_P`` instead of ``τ``."""
    if not generic:
        return ONE
    st = as_structure(obj)
    return compactness_generic(st.tau_p, _grid_for(st, refine, grid), order)


def gamma_p_subset(obj: Structured, a: SubsetId, generic: bool = False, refine: int = 1) -> Fraction:
    """``Γ_P(A)``: strong compactness of ``A`` with the trace of ``τ_P`` on it."""
    return gamma_p(trace(as_structure(obj), a), generic=generic, refine=refine)


def beta1_degree(
    obj: Structured,
    phi: FuzzyFamily | None = None,
    generic: bool = False,
    refine: int = 1,
    grid: FamilyGrid | None = None,
) -> Fraction:
    """Compactness through covers drawn from a pre-subbase ``φ`` (default ``τ_P``)."""
    st = as_structure(obj)
    phi = st.tau_p if phi is None else phi
    same_carrier(phi.carrier, st.carrier)
    if not generic:
        return ONE
    return compactness_generic(phi, _grid_for(st, refine, grid, [phi]))


def beta5_degree(
    obj: Structured,
    generic: bool = False,
    refine: int = 1,
    grid: FamilyGrid | None = None,
) -> Fraction:
    """``inf_ℜ ([ℜ ⊆ Ϝ_P] ⊗ fI(ℜ) -> ∃x ∀A (A ∈ ℜ -> x ∈ A))``.

    Per row, ``fI(ℜ)`` equals the consequent itself whenever ``FF(ℜ) = 1``
    (the consequent is antitone in ``℘``); other rows fall back to
    :func:`fi_degree`.
    """
    st = as_structure(obj)
    if not generic:
        return ONE
    c = st.carrier
    _require_generic(c)
    closed = FuzzyFamily(c, tuple(st.tau_p(c.full & ~b) for b in c.subsets()))
    grid = _grid_for(st, refine, grid)
    d = grid.denominator
    terms = _Terms(c, d)
    closed_scaled = _scale(closed, d)
    best = d
    for blk in _Scan(_family_columns(grid, c)).blocks():
        point = terms.common_point(blk)
        ff = terms.ff(blk)
        fi = _implies(ff, point, d)
        for i in np.flatnonzero(ff != d):
            fam = FuzzyFamily(c, tuple(Fraction(int(v), d) for v in blk.row(i)))
            fi[i] = int(fi_degree(fam, grid) * d)
        antecedent = _tnorm(terms.inclusion(blk, closed_scaled, "closed"), fi, d)
        best = min(best, int(_implies(antecedent, point, d).min()))
    return Fraction(best, d)


# --------------------------------------------------------------------------
# local compactness


def lc_degree(s: FuzzySpace, generic: bool = False, refine: int = 1) -> Fraction:
    """``inf_x sup_B N_x(B) ⊗ Γ(B, τ/B)``."""
    c = s.carrier
    nb = nbhd_table(c, s.tau)
    local = {}
    for b in range(1, c.size):
        if generic:
            fam = trace_family(s.tau, b)
            local[b] = gamma(FuzzySpace(fam.carrier, fam), generic=True, refine=refine)
        else:
            local[b] = ONE
    return inf_over(
        sup_over(tnorm(nb[x][b], local[b]) for b in local) for x in range(c.n)
    )


def lpc_degree(obj: Structured, generic: bool = False, refine: int = 1) -> Fraction:
    """``inf_x sup_B N^P_x(B) ⊗ Γ_P(B)``."""
    st = as_structure(obj)
    c = st.carrier
    local = {b: gamma_p_subset(st, b, generic, refine) for b in range(1, c.size)}
    return inf_over(
        sup_over(tnorm(st.nbhd[x][b], local[b]) for b in local) for x in range(c.n)
    )


def lpc_subset(obj: Structured, a: SubsetId, generic: bool = False, refine: int = 1) -> Fraction:
    """Locally strong compactness of ``A`` with the trace of ``τ_P``."""
    return lpc_degree(trace(as_structure(obj), a), generic, refine)
