"""Expression front end.

Grammar (the token "*" is the star product in the active ordering):

    expr   := term {("+"|"-") term}
    term   := factor {"*" factor}
    factor := base ["^" uint]
    base   := complex-literal | "u"uint | "v"uint | "hbar"
            | "(" expr ")" | "exp_*(" expr ")"

Complex literals are a, bi or i (a+bi arises from the sum rule); exp_*
accepts quadratic-plus-constant polynomials only.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import (EvalError, IndexOutOfRange, NonQuadraticExponent,
                     ParseError)
from .gauss import GaussianElement, GaussPoly, TwoValued, star_gauss_poly, \
    star_gausspoly, star_gauss_gauss
from .ordering import OrderingK
from .params import Params
from .poly import PolyC
from .star import star_poly
from .starexp import star_exp_quadratic


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Scalar:
    value: complex


@dataclass(frozen=True)
class Gen:
    kind: str  # "u" or "v"
    index: int  # 1-based


@dataclass(frozen=True)
class HBar:
    pass


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Star:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class StarExp:
    arg: object


def to_text(node) -> str:
    """Canonical text form; parses back to an equal AST."""
    if isinstance(node, Scalar):
        z = node.value
        if z.imag == 0:
            return _fmt(z.real)
        return f"{_fmt(z.imag)}i"
    if isinstance(node, Gen):
        return f"{node.kind}{node.index}"
    if isinstance(node, HBar):
        return "hbar"
    if isinstance(node, Add):
        return f"({to_text(node.left)} + {to_text(node.right)})"
    if isinstance(node, Sub):
        return f"({to_text(node.left)} - {to_text(node.right)})"
    if isinstance(node, Star):
        return f"({to_text(node.left)} * {to_text(node.right)})"
    if isinstance(node, Pow):
        return f"({to_text(node.base)}^{node.exponent})"
    if isinstance(node, StarExp):
        return f"exp_*({to_text(node.arg)})"
    raise TypeError(f"not an AST node: {node!r}")


def _fmt(x: float) -> str:
    return repr(float(x))


# -- tokenizer ----------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<expstar>exp_\*)
  | (?P<hbar>hbar)
  | (?P<gen>[uv]\d+)
  | (?P<num>(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?i?)
  | (?P<imag>i)
  | (?P<op>[-+*^()])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(_Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


# -- parser -------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens, params: Params):
        self.tokens = tokens
        self.index = 0
        self.params = params

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect_op(self, op: str):
        tok = self.peek()
        if tok.kind == "op" and tok.text == op:
            return self.advance()
        raise ParseError(f"expected {op!r}", tok.pos)

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.pos)
        return node

    def expr(self):
        node = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.advance()
                rhs = self.term()
                node = Add(node, rhs) if tok.text == "+" else Sub(node, rhs)
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.advance()
                node = Star(node, self.factor())
            else:
                return node

    def factor(self):
        node = self.base()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            num = self.peek()
            if num.kind != "num" or not num.text.isdigit():
                raise ParseError("expected a non-negative integer exponent", num.pos)
            self.advance()
            return Pow(node, int(num.text))
        return node

    def base(self):
        tok = self.advance()
        if tok.kind == "num":
            if tok.text.endswith("i"):
                return Scalar(complex(0.0, float(tok.text[:-1])))
            return Scalar(complex(float(tok.text)))
        if tok.kind == "imag":
            return Scalar(1j)
        if tok.kind == "hbar":
            return HBar()
        if tok.kind == "gen":
            kind, index = tok.text[0], int(tok.text[1:])
            if not 1 <= index <= self.params.m:
                raise IndexOutOfRange(
                    f"generator {tok.text} out of range for m = {self.params.m}")
            return Gen(kind, index)
        if tok.kind == "expstar":
            self.expect_op("(")
            inner = self.expr()
            self.expect_op(")")
            return StarExp(inner)
        if tok.kind == "op" and tok.text == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"expected a value, got {tok.text or 'end of input'!r}", tok.pos)


def parse_expr(text: str, params: Params):
    """Parse to an AST; raises ParseError with the failing offset."""
    return _Parser(tokenize(text), params).parse()


# -- evaluator ----------------------------------------------------------------

def _as_two_valued(value) -> TwoValued:
    if isinstance(value, TwoValued):
        return value
    raise EvalError("internal: expected a two-valued element")


def _star_values(a, b, ordering: OrderingK, params: Params):
    if isinstance(a, PolyC) and isinstance(b, PolyC):
        return star_poly(a, b, ordering, params)
    if isinstance(a, PolyC) and isinstance(b, TwoValued):
        rep = b.representative
        if isinstance(rep, GaussianElement):
            return TwoValued(star_gauss_poly(rep, a, ordering, params, side="left"))
        return TwoValued(star_gausspoly(
            GaussPoly(a, GaussianElement.one(params.m)), rep, ordering, params))
    if isinstance(a, TwoValued) and isinstance(b, PolyC):
        rep = a.representative
        if isinstance(rep, GaussianElement):
            return TwoValued(star_gauss_poly(rep, b, ordering, params, side="right"))
        return TwoValued(star_gausspoly(
            rep, GaussPoly(b, GaussianElement.one(params.m)), ordering, params))
    if isinstance(a, TwoValued) and isinstance(b, TwoValued):
        ra, rb = a.representative, b.representative
        if isinstance(ra, GaussianElement) and isinstance(rb, GaussianElement):
            return star_gauss_gauss(ra, rb, ordering, params)
        pa = ra if isinstance(ra, GaussPoly) else GaussPoly.pure(ra)
        pb = rb if isinstance(rb, GaussPoly) else GaussPoly.pure(rb)
        return TwoValued(star_gausspoly(pa, pb, ordering, params))
    raise EvalError("cannot star these operands")


class Evaluator:
    """Evaluates an AST to a polynomial or a two-valued Gaussian element."""

    def __init__(self, params: Params, ordering: OrderingK):
        self.params = params
        self.ordering = ordering

    def eval(self, node):
        p = self.params
        if isinstance(node, Scalar):
            return PolyC.constant(p.n, node.value)
        if isinstance(node, HBar):
            return PolyC.constant(p.n, p.hbar)
        if isinstance(node, Gen):
            offset = 0 if node.kind == "u" else p.m
            return PolyC.generator(p.n, offset + node.index - 1)
        if isinstance(node, Add) or isinstance(node, Sub):
            left, right = self.eval(node.left), self.eval(node.right)
            if not (isinstance(left, PolyC) and isinstance(right, PolyC)):
                raise EvalError("sums are defined for polynomial values only")
            return left + right if isinstance(node, Add) else left - right
        if isinstance(node, Star):
            return _star_values(self.eval(node.left), self.eval(node.right),
                                self.ordering, p)
        if isinstance(node, Pow):
            base = self.eval(node.base)
            if node.exponent == 0:
                return PolyC.one(p.n)
            out = base
            for _ in range(node.exponent - 1):
                out = _star_values(out, base, self.ordering, p)
            return out
        if isinstance(node, StarExp):
            return self._star_exp(self.eval(node.arg))
        raise TypeError(f"not an AST node: {node!r}")

    def _star_exp(self, value):
        p = self.params
        if not isinstance(value, PolyC):
            raise NonQuadraticExponent("exp_* takes a polynomial argument")
        if value.degree() > 2:
            raise NonQuadraticExponent(
                f"exp_* argument has degree {value.degree()}, maximum is 2")
        const = value.constant_term()
        a = np.zeros((p.n, p.n), dtype=complex)
        for e, c in value.terms.items():
            total = sum(e)
            if total == 0:
                continue
            if total == 1:
                raise NonQuadraticExponent(
                    "exp_* argument must be quadratic plus constant (no linear part)")
            idx = [i for i, k in enumerate(e) for _ in range(k)]
            i, j = idx
            if i == j:
                a[i, i] += c
            else:
                a[i, j] += 0.5 * c
                a[j, i] += 0.5 * c
        if np.abs(a).max(initial=0.0) == 0.0:
            return PolyC.constant(p.n, np.exp(const))
        result = star_exp_quadratic(a, self.ordering, p, 1.0)
        rep = result.representative
        return TwoValued(rep.scaled(np.exp(const)))


def evaluate(text: str, params: Params, ordering: OrderingK):
    return Evaluator(params, ordering).eval(parse_expr(text, params))
