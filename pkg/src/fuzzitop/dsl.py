"""A small formula language evaluated in Łukasiewicz semantics.

Grammar (loosest binding first)::

    quant   := ("forall" | "exists") IDENT ":" ("point" | "subset") "." quant | iff
    iff     := impl ("<->" quant)?
    impl    := or ("->" quant)?
    or      := and ("\\/" and)*
    and     := tensor ("/\\" tensor)*
    tensor  := unary ("(*)" unary)*
    unary   := "~" unary | atom | NUMBER | "(" quant ")"
    atom    := IDENT "(" [arg ("," arg)*] ")"
    setexpr := setterm (("+" | "&") setterm)*
    setterm := setprim ("^c")*
    setprim := "{" [IDENT ("," IDENT)*] "}" | IDENT | "(" setexpr ")"

A point argument is an identifier: a bound point variable if one is in
scope, otherwise a carrier label resolved at evaluation time.  Subset
identifiers must be bound.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Union

from .compactness import gamma, gamma_p, lc_degree, lpc_degree
from .degree import crisp, degree, format_degree, iff, implies, inf_over, sup_over, tnorm
from .maps import t2p, t3p, t4p
from .preopen import as_structure, p_topological_degree
from .space import FuzzySpace, nbhd


class DslError(ValueError):
    pass


class DslSyntaxError(DslError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class DslCostError(DslError):
    pass


# --------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class PointRef:
    name: str


@dataclass(frozen=True)
class SetRef:
    name: str


@dataclass(frozen=True)
class SetLit:
    items: tuple[PointRef, ...]


@dataclass(frozen=True)
class SetComp:
    arg: "SetExpr"


@dataclass(frozen=True)
class SetOp:
    op: str  # "+" union, "&" intersection
    left: "SetExpr"
    right: "SetExpr"


SetExpr = Union[SetRef, SetLit, SetComp, SetOp]


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Atom:
    name: str
    args: tuple


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class Bin:
    op: str  # and | or | tensor | implies | iff
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Quant:
    kind: str  # forall | exists
    var: str
    sort: str  # point | subset
    body: "Formula"


Formula = Union[Const, Atom, Not, Bin, Quant]

# name -> argument sorts ("p" point, "s" subset)
SIGNATURES: dict[str, str] = {
    "in": "ps",
    "subset": "ss",
    "disjoint": "ss",
    "eq": "ss",
    "open": "s",
    "preopen": "s",
    "pclosed": "s",
    "nbhd": "ps",
    "pnbhd": "ps",
    "cl": "sp",
    "pcl": "sp",
    "gamma": "",
    "gamma_p": "",
    "lc": "",
    "lpc": "",
    "t2p": "",
    "t3p": "",
    "t4p": "",
    "ptop": "",
}

KEYWORDS = {"forall", "exists", "point", "subset"}
BIN_TOKENS = {"and": "/\\", "or": "\\/", "tensor": "(*)", "implies": "->", "iff": "<->"}

# --------------------------------------------------------------------------
# lexer

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+/\d+|\d+\.\d+|\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><->|->|\\/|/\\|\(\*\)|\^c|[~(){},:.+&])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    out, pos, line, line_start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        else:
            for i, ch in enumerate(m.group()):
                if ch == "\n":
                    line, line_start = line + 1, pos + i + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


# --------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str, scope: Mapping[str, str]):
        self.tokens = tokenize(text)
        self.i = 0
        self.scope = [dict(scope)]

    # helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        raise DslSyntaxError(message, tok.line, tok.column)

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind != "eof":
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.tok
        if not self.accept(text):
            self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        return tok

    def ident(self) -> Token:
        tok = self.tok
        if tok.kind != "ident" or tok.text in KEYWORDS:
            self.error(f"expected identifier, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok

    def lookup(self, name: str) -> str | None:
        for frame in reversed(self.scope):
            if name in frame:
                return frame[name]
        return None

    # grammar
    def formula(self) -> Formula:
        f = self.quant()
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")
        return f

    def quant(self) -> Formula:
        if self.tok.text in ("forall", "exists") and self.tok.kind == "ident":
            kind = self.tok.text
            self.i += 1
            var = self.ident().text
            self.expect(":")
            sort = self.tok.text
            if sort not in ("point", "subset"):
                self.error("expected 'point' or 'subset'")
            self.i += 1
            self.expect(".")
            self.scope.append({var: sort})
            try:
                body = self.quant()
            finally:
                self.scope.pop()
            return Quant(kind, var, sort, body)
        return self.iff()

    def iff(self) -> Formula:
        left = self.impl()
        if self.accept("<->"):
            return Bin("iff", left, self.quant())
        return left

    def impl(self) -> Formula:
        left = self.disj()
        if self.accept("->"):
            return Bin("implies", left, self.quant())
        return left

    def _chain(self, op: str, token: str, sub) -> Formula:
        left = sub()
        while self.accept(token):
            left = Bin(op, left, sub())
        return left

    def disj(self) -> Formula:
        return self._chain("or", "\\/", self.conj)

    def conj(self) -> Formula:
        return self._chain("and", "/\\", self.tens)

    def tens(self) -> Formula:
        return self._chain("tensor", "(*)", self.unary)

    def unary(self) -> Formula:
        tok = self.tok
        if self.accept("~"):
            return Not(self.unary())
        if tok.kind == "num":
            self.i += 1
            try:
                return Const(degree(Fraction(tok.text)))
            except Exception:
                self.error(f"degree literal {tok.text!r} outside [0,1]", tok)
        if self.accept("("):
            inner = self.quant()
            self.expect(")")
            return inner
        if tok.kind == "ident" and tok.text in SIGNATURES:
            return self.atom()
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            self.error(f"unknown predicate {tok.text!r}")
        self.error(f"unexpected {tok.text or 'end of input'!r}")

    def atom(self) -> Atom:
        tok = self.tok
        self.i += 1
        sig = SIGNATURES[tok.text]
        self.expect("(")
        args = []
        for k, sort in enumerate(sig):
            if k:
                self.expect(",")
            args.append(self.point() if sort == "p" else self.setexpr())
        self.expect(")")
        return Atom(tok.text, tuple(args))

    def point(self) -> PointRef:
        tok = self.ident()
        if self.lookup(tok.text) == "subset":
            self.error(f"{tok.text!r} is a subset variable, a point is required", tok)
        return PointRef(tok.text)

    def setexpr(self) -> SetExpr:
        left = self.setterm()
        while self.tok.text in ("+", "&"):
            op = self.tok.text
            self.i += 1
            left = SetOp(op, left, self.setterm())
        return left

    def setterm(self) -> SetExpr:
        e = self.setprim()
        while self.accept("^c"):
            e = SetComp(e)
        return e

    def setprim(self) -> SetExpr:
        if self.accept("{"):
            items = []
            if not self.accept("}"):
                items.append(self.point())
                while self.accept(","):
                    items.append(self.point())
                self.expect("}")
            return SetLit(tuple(items))
        if self.accept("("):
            e = self.setexpr()
            self.expect(")")
            return e
        tok = self.ident()
        sort = self.lookup(tok.text)
        if sort is None:
            self.error(f"unbound identifier {tok.text!r}", tok)
        if sort != "subset":
            self.error(f"{tok.text!r} is a point variable, a subset is required", tok)
        return SetRef(tok.text)


def parse(text: str, bindings: Mapping[str, str] | None = None) -> Formula:
    """Parse ``text``; ``bindings`` maps externally bound names to their sort."""
    return _Parser(text, bindings or {}).formula()


# --------------------------------------------------------------------------
# printer


def format_set(e: SetExpr) -> str:
    if isinstance(e, SetRef):
        return e.name
    if isinstance(e, SetLit):
        return "{" + ",".join(p.name for p in e.items) + "}"
    if isinstance(e, SetComp):
        return format_set(e.arg) + "^c"
    return f"({format_set(e.left)} {e.op} {format_set(e.right)})"


def format_formula(f: Formula) -> str:
    """Fully parenthesized rendering; ``parse`` maps it back to ``f``."""
    if isinstance(f, Const):
        return format_degree(f.value)
    if isinstance(f, Atom):
        args = ", ".join(a.name if isinstance(a, PointRef) else format_set(a) for a in f.args)
        return f"{f.name}({args})"
    if isinstance(f, Not):
        return "~" + format_formula(f.arg)
    if isinstance(f, Bin):
        return f"({format_formula(f.left)} {BIN_TOKENS[f.op]} {format_formula(f.right)})"
    return f"({f.kind} {f.var}:{f.sort}. {format_formula(f.body)})"


# --------------------------------------------------------------------------
# evaluator


def subset_depth(f: Formula) -> int:
    """Deepest nesting of subset quantifiers."""
    if isinstance(f, Quant):
        return subset_depth(f.body) + (f.sort == "subset")
    if isinstance(f, Not):
        return subset_depth(f.arg)
    if isinstance(f, Bin):
        return max(subset_depth(f.left), subset_depth(f.right))
    return 0


COST_POINTS = 5


class _Evaluator:
    def __init__(self, space: FuzzySpace):
        self.space = space
        self.st = as_structure(space)
        self.c = space.carrier
        self.cache: dict[str, Fraction] = {}

    def point(self, p: PointRef, env) -> int:
        if p.name in env:
            return env[p.name]
        try:
            return self.c.index(p.name)
        except Exception:
            raise DslError(f"unbound identifier or unknown point {p.name!r}") from None

    def set(self, e: SetExpr, env) -> int:
        if isinstance(e, SetRef):
            return env[e.name]
        if isinstance(e, SetLit):
            out = 0
            for p in e.items:
                out |= 1 << self.point(p, env)
            return out
        if isinstance(e, SetComp):
            return self.c.full & ~self.set(e.arg, env)
        a, b = self.set(e.left, env), self.set(e.right, env)
        return a | b if e.op == "+" else a & b

    def nullary(self, name: str) -> Fraction:
        if name not in self.cache:
            fn = {
                "gamma": lambda: gamma(self.space),
                "gamma_p": lambda: gamma_p(self.st),
                "lc": lambda: lc_degree(self.space),
                "lpc": lambda: lpc_degree(self.st),
                "t2p": lambda: t2p(self.st),
                "t3p": lambda: t3p(self.st),
                "t4p": lambda: t4p(self.st),
                "ptop": lambda: p_topological_degree(self.st),
            }[name]
            self.cache[name] = fn()
        return self.cache[name]

    def atom(self, f: Atom, env) -> Fraction:
        name, sig = f.name, SIGNATURES[f.name]
        if not sig:
            return self.nullary(name)
        vals = [self.point(a, env) if s == "p" else self.set(a, env) for a, s in zip(f.args, sig)]
        full = self.c.full
        if name == "in":
            return crisp(bool(vals[1] >> vals[0] & 1))
        if name == "subset":
            return crisp(vals[0] & ~vals[1] == 0)
        if name == "disjoint":
            return crisp(vals[0] & vals[1] == 0)
        if name == "eq":
            return crisp(vals[0] == vals[1])
        if name == "open":
            return self.space.tau(vals[0])
        if name == "preopen":
            return self.st.tau_p(vals[0])
        if name == "pclosed":
            return self.st.tau_p(full & ~vals[0])
        if name == "nbhd":
            return nbhd(self.space, vals[0], vals[1])
        if name == "pnbhd":
            return self.st.nbhd[vals[0]][vals[1]]
        if name == "cl":
            return 1 - nbhd(self.space, vals[1], full & ~vals[0])
        if name == "pcl":
            return 1 - self.st.nbhd[vals[1]][full & ~vals[0]]
        raise DslError(f"unknown predicate {name!r}")

    def eval(self, f: Formula, env) -> Fraction:
        if isinstance(f, Const):
            return f.value
        if isinstance(f, Atom):
            return self.atom(f, env)
        if isinstance(f, Not):
            return 1 - self.eval(f.arg, env)
        if isinstance(f, Bin):
            a, b = self.eval(f.left, env), self.eval(f.right, env)
            if f.op == "and":
                return min(a, b)
            if f.op == "or":
                return max(a, b)
            if f.op == "tensor":
                return tnorm(a, b)
            if f.op == "implies":
                return implies(a, b)
            return iff(a, b)
        domain = range(self.c.n) if f.sort == "point" else self.c.subsets()
        fold = inf_over if f.kind == "forall" else sup_over
        return fold(self._body(f, domain, env))

    def _body(self, f: Quant, domain, env) -> Iterator[Fraction]:
        for v in domain:
            yield self.eval(f.body, {**env, f.var: v})


def evaluate(f: Formula | str, space: FuzzySpace, env: Mapping[str, int] | None = None) -> Fraction:
    """Degree of ``f`` in ``space``; ``env`` maps free names to point indices or subset masks."""
    if isinstance(f, str):
        f = parse(f)
    if space.n > COST_POINTS and subset_depth(f) >= 3:
        raise DslCostError(
            f"subset quantifiers nested 3 deep over {space.n} points exceed the cost guard"
        )
    return _Evaluator(space).eval(f, dict(env or {}))


def parse_binding(space: FuzzySpace, text: str) -> tuple[str, str, int]:
    """``"x=a"`` binds a point, ``"A={a,b}"`` binds a subset."""
    name, sep, value = text.partition("=")
    name, value = name.strip(), value.strip()
    if not sep or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
        raise DslError(f"malformed binding {text!r}")
    c = space.carrier
    if value.startswith("{") and value.endswith("}"):
        labels = [v.strip() for v in value[1:-1].split(",") if v.strip()]
        return name, "subset", c.subset(labels)
    return name, "point", c.index(value)


T2P_FORMULA = (
    "forall x:point. forall y:point. ~eq({x}, {y}) -> "
    "exists B:subset. exists C:subset. pnbhd(x, B) /\\ pnbhd(y, C) /\\ disjoint(B, C)"
)
