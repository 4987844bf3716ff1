"""Command-line interface.

Exit codes: 0 success, 1 invalid space or failed check, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import compactness as comp
from .carrier import Carrier, CarrierError
from .checks import REGISTRY, T3_FORMS, UnknownCheck, check
from .degree import DegreeError, format_degree
from .dsl import DslError, evaluate, parse, parse_binding
from .io import (
    InputError,
    InvalidSpace,
    dumps,
    family_from_dict,
    family_to_dict,
    load_space,
    map_from_dict,
    read_json,
    space_to_dict,
)
from .maps import continuity_degrees, openness_degrees, t2p, t3p, t3p_nbhd, t4p
from .nets import beta2, beta3, beta4
from .preopen import PreconditionError, as_structure, cl_p, f_p, p_topological_degree
from .product import product_space
from .search import search
from .space import FuzzyFamily, closure, nbhd, random_space, subspace, validate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def parse_set(c: Carrier, text: str) -> int:
    """``"{a,b}"`` or ``"a,b"``; ``"{}"`` is the empty set."""
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    return c.subset([p.strip() for p in body.split(",") if p.strip()])


def _out(args, payload: dict, text: str) -> None:
    print(dumps(payload) if args.json else text)


# --------------------------------------------------------------------------
# degree table


def _need_set(args, s) -> int:
    if args.set is None:
        raise UsageError(f"degree {args.name} needs --set")
    return parse_set(s.carrier, args.set)


def _need_point(args, s) -> int:
    if args.point is None:
        raise UsageError(f"degree {args.name} needs --point")
    return s.carrier.index(args.point)


def _pointwise(args, s, fn: Callable[[int], Fraction]):
    if args.point is not None:
        return fn(s.carrier.index(args.point))
    return {s.carrier.points[x]: fn(x) for x in range(s.n)}


def _map_degrees(args, s):
    if args.map is None or args.target is None:
        raise UsageError(f"degree {args.name} needs --map and --target")
    target = load_space(args.target, args.allow_invalid)
    f = map_from_dict(read_json(args.map), s.carrier, target.carrier)
    c, cp, ip = continuity_degrees(f, s, target)
    o, op = openness_degrees(f, s, target)
    return {"c": c, "cp": cp, "ip": ip, "o": o, "op": op}[args.name]


def _fi(args, s):
    st = as_structure(s)
    if args.family is None or args.family == "tau_p":
        fam = st.tau_p
    elif args.family == "f_p":
        fam = FuzzyFamily(st.carrier, tuple(st.tau_p(st.carrier.full & ~a) for a in st.carrier.subsets()))
    else:
        fam = family_from_dict(read_json(args.family), st.carrier)
    grid = comp.FamilyGrid.build([fam], refine=args.refine)
    return comp.fi_degree(fam, grid, generic=True)


def _degree_table(args, s) -> dict[str, Callable[[], object]]:
    g, r = args.generic, args.refine
    return {
        "tau": lambda: s.tau(_need_set(args, s)),
        "tau_p": lambda: as_structure(s).tau_p(_need_set(args, s)),
        "f_p": lambda: f_p(s, _need_set(args, s)),
        "nbhd": lambda: nbhd(s, _need_point(args, s), _need_set(args, s)),
        "nbhd_p": lambda: as_structure(s).nbhd[_need_point(args, s)][_need_set(args, s)],
        "cl": lambda: _pointwise(args, s, closure(s, _need_set(args, s))),
        "cl_p": lambda: _pointwise(args, s, cl_p(s, _need_set(args, s))),
        "t2p": lambda: t2p(s),
        "t3p": lambda: t3p(s),
        "t3p_open_point": lambda: t3p(s, point_closed=False),
        "t3p_nbhd": lambda: t3p_nbhd(s),
        "t4p": lambda: t4p(s),
        "ptop": lambda: p_topological_degree(s),
        "gamma": lambda: comp.gamma(s, generic=g, refine=r),
        "gamma_p": lambda: comp.gamma_p(s, generic=g, refine=r),
        "beta1": lambda: comp.beta1_degree(s, generic=g, refine=r),
        "beta2": lambda: beta2(s),
        "beta3": lambda: beta3(s),
        "beta4": lambda: beta4(s),
        "beta5": lambda: comp.beta5_degree(s, generic=g, refine=r),
        "lc": lambda: comp.lc_degree(s, generic=g, refine=r),
        "lpc": lambda: comp.lpc_degree(s, generic=g, refine=r),
        "fi": lambda: _fi(args, s),
        "c": lambda: _map_degrees(args, s),
        "cp": lambda: _map_degrees(args, s),
        "ip": lambda: _map_degrees(args, s),
        "o": lambda: _map_degrees(args, s),
        "op": lambda: _map_degrees(args, s),
    }


DEGREE_NAMES = sorted(_degree_table(argparse.Namespace(generic=False, refine=1), None))


def _fmt(value) -> object:
    if isinstance(value, Fraction):
        return format_degree(value)
    if isinstance(value, dict):
        return {k: _fmt(v) for k, v in value.items()}
    if value is None:
        return None
    return str(value)


def cmd_degree(args) -> int:
    s = load_space(args.space, args.allow_invalid)
    value = _fmt(_degree_table(args, s)[args.name]())
    if value is None:
        raise UsageError(f"{args.name} is undefined for these spaces")
    if isinstance(value, dict):
        text = "\n".join(f"{k} {v}" for k, v in value.items())
    else:
        text = value
    _out(args, {"degree": args.name, "value": value}, text)
    return EXIT_OK


# --------------------------------------------------------------------------
# other commands


def cmd_validate(args) -> int:
    s = load_space(args.space, allow_invalid=True)
    report = validate(s)
    payload = {
        "valid": report.valid,
        "level_cuts_are_topologies": report.level_cuts_are_topologies,
        "violations": [str(v) for v in report.violations],
    }
    text = "valid" if report.valid else "invalid\n" + "\n".join(payload["violations"])
    _out(args, payload, text)
    return EXIT_OK if report.valid else EXIT_FAIL


def cmd_eval(args) -> int:
    s = load_space(args.space, args.allow_invalid)
    env, sorts = {}, {}
    for b in args.bind:
        name, sort, value = parse_binding(s, b)
        env[name], sorts[name] = value, sort
    value = format_degree(evaluate(parse(args.expr, sorts), s, env))
    _out(args, {"formula": args.expr, "value": value}, value)
    return EXIT_OK


def cmd_check(args) -> int:
    s = load_space(args.space, args.allow_invalid)
    results = check(s, args.theorem, t3_form=args.t3_form)
    lines = []
    for r in results:
        line = f"{r.id:5} {r.status.upper():7} instances={r.instances}"
        if r.violations:
            v = r.violations[0]
            line += f" witness={v.args} lhs={format_degree(v.lhs)} rhs={format_degree(v.rhs)}"
        elif r.tight is not None:
            line += f" tight={r.tight.args} slack={format_degree(r.tight.slack)}"
        if r.note:
            line += f" ({r.note})"
        lines.append(line)
    _out(args, {"results": [r.to_dict() for r in results]}, "\n".join(lines))
    return EXIT_FAIL if any(r.status == "fail" for r in results) else EXIT_OK


def cmd_search(args) -> int:
    report = search(
        args.theorem, args.points, args.grid, args.samples, args.seed,
        converse=args.converse, exhaustive=args.exhaustive, t3_form=args.t3_form, workers=args.workers,
    )
    doc = report.to_dict()
    kind = "witnesses" if args.converse else "violations"
    text = (
        f"{args.theorem}: {report.spaces_tried} spaces, {report.skipped} skipped, "
        f"{len(report.violations)} {kind}"
    )
    if report.violations:
        v = report.violations[0]
        text += f"\nfirst: sample {v.sample} args={v.instance.args} lhs={format_degree(v.instance.lhs)} rhs={format_degree(v.instance.rhs)}"
    _out(args, doc, text)
    if args.converse:
        return EXIT_OK if report.violations else EXIT_FAIL
    return EXIT_FAIL if report.violations else EXIT_OK


def cmd_product(args) -> int:
    spaces = [load_space(p, args.allow_invalid) for p in args.spaces]
    prod = product_space(spaces)
    doc = {
        "points": list(prod.carrier.points),
        "beta_p": family_to_dict(prod.beta_p)["family"],
        "tau_p": family_to_dict(prod.tau_p)["family"],
    }
    print(dumps(doc))
    return EXIT_OK


def cmd_subspace(args) -> int:
    s = load_space(args.space, args.allow_invalid)
    a = parse_set(s.carrier, args.set)
    if a == 0:
        raise UsageError("a subspace needs a nonempty set")
    print(dumps(space_to_dict(subspace(s, a))))
    return EXIT_OK


def cmd_gen(args) -> int:
    print(dumps(space_to_dict(random_space(args.points, args.grid, args.seed))))
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fuzzitop", description="Finite fuzzifying-topology checker.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_space(sp, json_flag=True):
        sp.add_argument("space", help="space JSON file, or - for standard input")
        sp.add_argument("--allow-invalid", action="store_true", help="skip axiom validation")
        if json_flag:
            sp.add_argument("--json", action="store_true")
        return sp

    sp = sub.add_parser("validate", help="check the fuzzifying-topology axioms")
    sp.add_argument("space")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("degree", help="evaluate a named degree")
    sp.add_argument("name", choices=DEGREE_NAMES)
    with_space(sp)
    sp.add_argument("--set", help="subset argument, e.g. '{a,b}'")
    sp.add_argument("--point", help="point argument")
    sp.add_argument("--map", help="map JSON for c/cp/ip/o/op")
    sp.add_argument("--target", help="codomain space JSON for map degrees")
    sp.add_argument("--family", help="fi family: tau_p, f_p or a family JSON file")
    sp.add_argument("--generic", action="store_true", help="use grid enumeration for compactness degrees")
    sp.add_argument("--refine", type=int, default=1, help="grid refinement factor")
    sp.set_defaults(func=cmd_degree)

    sp = with_space(sub.add_parser("eval", help="evaluate a formula"))
    sp.add_argument("-e", "--expr", required=True)
    sp.add_argument("--bind", action="append", default=[], help="x=a or A={a,b}")
    sp.set_defaults(func=cmd_eval)

    sp = with_space(sub.add_parser("check", help="run registered theorem checks"))
    sp.add_argument("--theorem", default="all", help="check id or 'all'")
    sp.add_argument("--t3-form", choices=T3_FORMS, default="literal")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("search", help="search generated spaces for violations")
    sp.add_argument("--theorem", required=True, choices=sorted(REGISTRY))
    sp.add_argument("--points", type=int, required=True)
    sp.add_argument("--grid", type=int, required=True)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--converse", action="store_true", help="collect strict rhs > lhs witnesses")
    sp.add_argument("--exhaustive", action="store_true", help="enumerate every grid space instead of sampling")
    sp.add_argument("--t3-form", choices=T3_FORMS, default="literal")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("product", help="product pre-open structure")
    sp.add_argument("spaces", nargs="+")
    sp.add_argument("--allow-invalid", action="store_true")
    sp.set_defaults(func=cmd_product)

    sp = with_space(sub.add_parser("subspace", help="trace of τ on a subset"), json_flag=False)
    sp.add_argument("--set", required=True)
    sp.set_defaults(func=cmd_subspace)

    sp = sub.add_parser("gen", help="seeded random valid space")
    sp.add_argument("--points", type=int, required=True)
    sp.add_argument("--grid", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidSpace as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (InputError, UsageError, CarrierError, DegreeError, DslError, UnknownCheck, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
