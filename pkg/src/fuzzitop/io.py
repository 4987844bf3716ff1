"""JSON encodings of spaces, families and maps.

Space::

    {"points": ["a", "b"], "tau": [{"set": ["a"], "degree": "3/4"}, ...]}

Omitted subsets get degree 0, except ∅ and X which default to 1.  A family
file uses the same shape with the key ``"family"`` and no defaults.  A map
file is ``{"map": {"a": "x", "b": "y"}}``.
"""

from __future__ import annotations

import json
import sys
from typing import IO, Any

from .carrier import Carrier, CarrierError
from .degree import DegreeError, degree, format_degree
from .maps import PointMap
from .space import FuzzyFamily, FuzzySpace, ValidationReport, make_space, validate


class InputError(ValueError):
    """Malformed input document."""


class InvalidSpace(ValueError):
    def __init__(self, report: ValidationReport):
        super().__init__("invalid space: " + "; ".join(str(v) for v in report.violations[:5]))
        self.report = report


def _entries(c: Carrier, rows: Any, key: str) -> dict[int, Any]:
    if not isinstance(rows, list):
        raise InputError(f"{key!r} must be a list")
    out: dict[int, Any] = {}
    for row in rows:
        if not isinstance(row, dict) or "set" not in row or "degree" not in row:
            raise InputError(f"each {key!r} entry needs 'set' and 'degree'")
        try:
            mask = c.subset(row["set"])
            out[mask] = degree(row["degree"])
        except (CarrierError, DegreeError) as exc:
            raise InputError(str(exc)) from exc
    return out


def _carrier(doc: Any) -> Carrier:
    if not isinstance(doc, dict) or "points" not in doc:
        raise InputError("document needs a 'points' list")
    try:
        return Carrier(tuple(str(p) for p in doc["points"]))
    except CarrierError as exc:
        raise InputError(str(exc)) from exc


def space_from_dict(doc: Any, allow_invalid: bool = False) -> FuzzySpace:
    c = _carrier(doc)
    s = make_space(c.points, _entries(c, doc.get("tau", []), "tau"))
    if not allow_invalid:
        report = validate(s)
        if not report.valid:
            raise InvalidSpace(report)
    return s


def family_from_dict(doc: Any, c: Carrier | None = None) -> FuzzyFamily:
    c = c or _carrier(doc)
    return FuzzyFamily.from_mapping(c, _entries(c, doc.get("family", []), "family"))


def _rows(c: Carrier, fam: FuzzyFamily, keep_ends: bool = False) -> list[dict]:
    # ∅ and X are written even at 0 when their loader default would differ
    return [
        {"set": c.labels(a), "degree": format_degree(fam(a))}
        for a in c.subsets()
        if fam(a) != 0 or (keep_ends and a in (0, c.full))
    ]


def space_to_dict(s: FuzzySpace) -> dict:
    return {"points": list(s.carrier.points), "tau": _rows(s.carrier, s.tau, keep_ends=True)}


def family_to_dict(fam: FuzzyFamily) -> dict:
    return {"points": list(fam.carrier.points), "family": _rows(fam.carrier, fam)}


def map_from_dict(doc: Any, domain: Carrier, codomain: Carrier) -> PointMap:
    if not isinstance(doc, dict) or not isinstance(doc.get("map"), dict):
        raise InputError("map document needs a 'map' object")
    try:
        return PointMap.from_labels(domain, codomain, doc["map"])
    except CarrierError as exc:
        raise InputError(str(exc)) from exc


def map_to_dict(f: PointMap) -> dict:
    return {"map": {f.domain.points[x]: f.codomain.points[y] for x, y in enumerate(f.assign)}}


def read_json(path: str, stdin: IO[str] | None = None) -> Any:
    """Load JSON from ``path``; ``-`` reads standard input."""
    try:
        if path == "-":
            return json.load(stdin or sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_space(path: str, allow_invalid: bool = False) -> FuzzySpace:
    return space_from_dict(read_json(path), allow_invalid)


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=False)
