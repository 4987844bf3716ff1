"""Seeded search for violations and tight instances of registered checks."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .checks import REGISTRY, Context, Instance, UnknownCheck, run_check
from .degree import format_degree
from .io import space_from_dict, space_to_dict
from .preopen import as_structure
from .space import FuzzySpace, grid_spaces, random_space

TIGHT_KEEP = 5


@dataclass
class Finding:
    sample: int
    space_seed: int | None
    space: dict
    instance: Instance

    def to_dict(self) -> dict:
        return {
            "sample": self.sample,
            "space_seed": self.space_seed,
            "space": self.space,
            **self.instance.to_dict(),
        }


@dataclass
class SearchReport:
    theorem: str
    points: int
    grid: int
    seed: int
    mode: str
    converse: bool
    t3_form: str
    spaces_tried: int = 0
    skipped: int = 0
    violations: list[Finding] = field(default_factory=list)
    tight: list[Finding] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "points": self.points,
            "grid": self.grid,
            "seed": self.seed,
            "mode": self.mode,
            "converse": self.converse,
            "t3_form": self.t3_form,
            "spaces_tried": self.spaces_tried,
            "skipped": self.skipped,
            "violations": [v.to_dict() for v in self.violations],
            "tight": [t.to_dict() for t in self.tight],
        }


def _spaces(points: int, grid: int, samples: int, seed: int, exhaustive: bool) -> Iterator[tuple[int | None, FuzzySpace]]:
    if exhaustive:
        for s in grid_spaces(points, grid):
            yield None, s
        return
    rng = random.Random(seed)
    for _ in range(samples):
        sub = rng.getrandbits(32)
        yield sub, random_space(points, grid, sub)


def _run_one(args) -> tuple[bool, list[Instance], Instance | None]:
    theorem, space, converse, t3_form = args
    ctx = Context(space, as_structure(space), t3_form=t3_form)
    result = run_check(REGISTRY[theorem], ctx, converse=converse)
    return result.status == "skipped", result.violations, result.tight


def search(
    theorem: str,
    points: int,
    grid: int,
    samples: int = 100,
    seed: int = 0,
    converse: bool = False,
    exhaustive: bool = False,
    t3_form: str = "literal",
    workers: int = 1,
) -> SearchReport:
    """Run one check over generated spaces.

    With ``converse`` the violations are strict witnesses ``rhs > lhs``,
    showing the reverse implication fails.  Results depend only on the
    arguments, and are merged in sample order when ``workers > 1``.
    """
    if theorem not in REGISTRY:
        raise UnknownCheck(theorem)
    report = SearchReport(
        theorem, points, grid, seed, "exhaustive" if exhaustive else "random", converse, t3_form
    )
    spaces = list(_spaces(points, grid, samples, seed, exhaustive))
    jobs = [(theorem, s, converse, t3_form) for _, s in spaces]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            outcomes = list(pool.map(_run_one, jobs, chunksize=8))
    else:
        outcomes = [_run_one(j) for j in jobs]

    best: Fraction | None = None
    for i, ((sub, space), (skipped, found, tight)) in enumerate(zip(spaces, outcomes)):
        report.spaces_tried += 1
        if skipped:
            report.skipped += 1
            continue
        doc = space_to_dict(space)
        report.violations += [Finding(i, sub, doc, inst) for inst in found]
        if tight is None:
            continue
        if best is None or tight.slack < best:
            best, report.tight = tight.slack, []
        if tight.slack == best and len(report.tight) < TIGHT_KEEP:
            report.tight.append(Finding(i, sub, doc, tight))
    return report


def replay(finding: dict, theorem: str, t3_form: str = "literal") -> tuple[str, str] | None:
    """Recompute ``(lhs, rhs)`` for a reported finding from its stored space."""
    space = space_from_dict(finding["space"], allow_invalid=True)
    ctx = Context(space, as_structure(space), t3_form=t3_form)
    for inst in REGISTRY[theorem].instances(ctx):
        if inst.args == finding["args"]:
            return format_degree(inst.lhs), format_degree(inst.rhs)
    return None
