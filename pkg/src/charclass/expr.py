"""Surface syntax for class expressions.

Grammar (whitespace insignificant, `*` binds tighter than `+`/`-`, `^`
tighter than `*`):

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := 'w' nat | 'p' nat | 'c' nat | 'V' '{' idx (',' idx)* '}'
            | nat | '(' expr ')'
    idx    := '1/2' | nat

The optional leading minus admits canonical integral output, which can
start with a negative term.  `1/2` is only legal inside V-braces.
Elaboration targets one coefficient regime: mod-2 (w atoms), integral
(p and V atoms), or Chern (even c atoms); integer literals are fine in
any regime, and mixing regimes is an error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexifiability import ChernExpr
from .errors import MixedExpressionError, ParseError
from .feshbach import IndexSet, IntClass
from .wring import SW, MPoly2


@dataclass(frozen=True)
class Gen:
    kind: str  # "w" | "p" | "c"
    index: int


@dataclass(frozen=True)
class VGen:
    doubled: tuple


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node) with sign in {+1, -1}


ClassExpr = object  # any of the node types above


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._run()

    def _run(self):
        text = self.text
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("nat", int(text[i:j]), i))
                i = j
                continue
            if ch in "wpcV":
                self.tokens.append(("name", ch, i))
                i += 1
                continue
            if ch in "+-*^(){},/":
                self.tokens.append((ch, ch, i))
                i += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", i)
        self.tokens.append(("end", None, len(text)))


class _Parser:
    def __init__(self, text: str):
        self.tokens = _Lexer(text).tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> ClassExpr:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return node

    def expr(self):
        terms = []
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        terms.append((sign, self.term()))
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            terms.append((1 if op == "+" else -1, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self):
        factors = [self.factor()]
        while self.peek()[0] == "*":
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("nat")
            return Pow(base, tok[1])
        return base

    def atom(self):
        tok = self.peek()
        kind, value, pos = tok
        if kind == "nat":
            self.take()
            return IntLit(value)
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if kind == "name":
            self.take()
            if value == "V":
                return self.v_atom(pos)
            idx_tok = self.take("nat")
            if idx_tok[1] < 1:
                raise ParseError("index must be positive", idx_tok[2])
            return Gen(value, idx_tok[1])
        raise ParseError(f"expected an atom, found {value!r}", pos)

    def v_atom(self, start: int):
        self.take("{")
        doubled = []
        while True:
            tok = self.take("nat")
            if self.peek()[0] == "/":
                self.take()
                den = self.take("nat")
                if tok[1] != 1 or den[1] != 2:
                    raise ParseError("the only fractional index is 1/2", tok[2])
                d = 1
            else:
                if tok[1] < 1:
                    raise ParseError("index must be positive", tok[2])
                d = 2 * tok[1]
            if d in doubled:
                raise ParseError("duplicate index in V-set", tok[2])
            doubled.append(d)
            nxt = self.take()
            if nxt[0] == "}":
                break
            if nxt[0] != ",":
                raise ParseError(f"expected ',' or '}}', found {nxt[1]!r}", nxt[2])
        return VGen(tuple(sorted(doubled)))


def parse(text: str) -> ClassExpr:
    """Parse a class expression; raises ParseError with a position."""
    return _Parser(text).parse()


def detect_domain(node: ClassExpr) -> str | None:
    """Infer the coefficient regime from the atoms present (None if only
    integer literals occur)."""
    kinds = set()

    def walk(nd):
        if isinstance(nd, Gen):
            kinds.add(nd.kind)
        elif isinstance(nd, VGen):
            kinds.add("V")
        elif isinstance(nd, Pow):
            walk(nd.base)
        elif isinstance(nd, Prod):
            for f in nd.factors:
                walk(f)
        elif isinstance(nd, Sum):
            for _, t in nd.terms:
                walk(t)

    walk(node)
    domains = set()
    if "w" in kinds:
        domains.add("mod2")
    if kinds & {"p", "V"}:
        domains.add("integral")
    if "c" in kinds:
        domains.add("chern")
    if len(domains) > 1:
        raise MixedExpressionError(
            "expression mixes atoms from different coefficient regimes"
        )
    return domains.pop() if domains else None


def _elab_mod2(node) -> MPoly2:
    if isinstance(node, IntLit):
        return MPoly2.one(SW) if node.value % 2 else MPoly2.zero(SW)
    if isinstance(node, Gen):
        if node.kind != "w":
            raise MixedExpressionError(
                f"{node.kind}{node.index} is not a mod-2 atom"
            )
        return MPoly2.gen(node.index, SW)
    if isinstance(node, VGen):
        raise MixedExpressionError("V-classes are integral, not mod-2")
    if isinstance(node, Pow):
        return _elab_mod2(node.base) ** node.exp
    if isinstance(node, Prod):
        out = MPoly2.one(SW)
        for f in node.factors:
            out = out * _elab_mod2(f)
        return out
    if isinstance(node, Sum):
        out = MPoly2.zero(SW)
        for _, t in node.terms:  # minus equals plus mod 2
            out = out + _elab_mod2(t)
        return out
    raise TypeError(f"not a class expression node: {node!r}")


def _elab_integral(node) -> IntClass:
    if isinstance(node, IntLit):
        return IntClass.integer(node.value)
    if isinstance(node, Gen):
        if node.kind != "p":
            raise MixedExpressionError(
                f"{node.kind}{node.index} is not an integral atom"
            )
        return IntClass.p(node.index)
    if isinstance(node, VGen):
        return IntClass.V(IndexSet(node.doubled))
    if isinstance(node, Pow):
        base = _elab_integral(node.base)
        out = IntClass.integer(1)
        for _ in range(node.exp):
            out = out * base
        return out
    if isinstance(node, Prod):
        out = IntClass.integer(1)
        for f in node.factors:
            out = out * _elab_integral(f)
        return out
    if isinstance(node, Sum):
        out = IntClass.zero()
        for sign, t in node.terms:
            val = _elab_integral(t)
            out = out + (val if sign > 0 else val.negate())
        return out
    raise TypeError(f"not a class expression node: {node!r}")


def _elab_chern(node) -> dict:
    # value representation: dict c_key -> int coefficient
    if isinstance(node, IntLit):
        return {(): node.value} if node.value else {}
    if isinstance(node, Gen):
        if node.kind != "c":
            raise MixedExpressionError(
                f"{node.kind}{node.index} is not a Chern atom"
            )
        if node.index % 2:
            raise MixedExpressionError(
                f"c{node.index}: only even Chern classes arise from "
                "complexifiable classes"
            )
        return {((node.index, 1),): 1}
    if isinstance(node, Pow):
        out = {(): 1}
        for _ in range(node.exp):
            out = _cdict_mul(out, _elab_chern(node.base))
        return out
    if isinstance(node, Prod):
        out = {(): 1}
        for f in node.factors:
            out = _cdict_mul(out, _elab_chern(f))
        return out
    if isinstance(node, Sum):
        out: dict = {}
        for sign, t in node.terms:
            for k, c in _elab_chern(t).items():
                out[k] = out.get(k, 0) + sign * c
        return {k: c for k, c in out.items() if c}
    raise MixedExpressionError("V-classes cannot appear in a Chern expression")


def _cdict_mul(a: dict, b: dict) -> dict:
    from .wring import mono_mul

    out: dict = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = mono_mul(k1, k2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def elaborate(node: ClassExpr, domain: str | None = None):
    """Turn an AST into an algebra element.

    domain: "mod2" -> MPoly2, "integral" -> IntClass, "chern" -> ChernExpr
    (free part only).  When None the regime is inferred from the atoms;
    a literal-only expression defaults to integral.
    """
    if domain is None:
        domain = detect_domain(node) or "integral"
    if domain == "mod2":
        return _elab_mod2(node)
    if domain == "integral":
        return _elab_integral(node)
    if domain == "chern":
        free = tuple(_elab_chern(node).items())
        return ChernExpr(free, MPoly2.zero(SW), False)
    raise ValueError(f"unknown domain {domain!r}")


def parse_mod2(text: str) -> MPoly2:
    return elaborate(parse(text), "mod2")


def parse_integral(text: str) -> IntClass:
    return elaborate(parse(text), "integral")
