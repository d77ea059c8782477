"""Small expression language for elements of Lambda(n) and vect(0|n).

    expr   := term (('+' | '-') term)*
    term   := ['-'] [scalar ['*']] factor ('.' factor)*
    factor := x<i> | e<i> | z<i> | d<i> | scalar | '(' expr ')'
            | '[' expr ',' expr ']' | div(expr) | ham(expr) | pb(expr, expr)

Polynomials and vector fields are kept apart: ``f.D`` multiplies a field by
a function on the left, ``[f, g]`` of two functions is the Poisson bracket.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional, Union

from .grassmann import Coordinates, GrassmannError, SuperPolynomial, poly_mul
from .vectorfields import VectorField, bracket, divergence, hamiltonian, poisson, poly_times_field

Value = Union[SuperPolynomial, VectorField]


class ExprError(ValueError):
    def __init__(self, msg: str, pos: Optional[int] = None, text: str = ""):
        self.pos = pos
        self.text = text
        if pos is not None:
            msg = f"{msg} at position {pos}"
            if text:
                msg += f"\n  {text}\n  {' ' * pos}^"
        super().__init__(msg)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>div|ham|pb|[xezd]\d+)|(?P<op>[-+.*\[\](),]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, n: int, split=None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.n = n
        self.split = split
        self.coords = Coordinates(n, split)

    # -- helpers

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            self.fail(f"expected {value!r}", tok)
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ExprError(msg, tok[2], self.text)

    # -- grammar

    def parse(self) -> Value:
        v = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return v

    def expr(self) -> Value:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term(sign)
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            tok = self.take()
            rhs = self.term(-1 if tok[1] == "-" else 1)
            acc = self.add(acc, rhs, tok)
        return acc

    def term(self, sign: int) -> Value:
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            sign = -sign
        c = Fraction(sign)
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            c *= Fraction(tok[1])
            nxt = self.peek()
            if nxt[1] == "*":
                self.take()
            elif nxt[0] in ("end",) or nxt[1] in ("+", "-", ")", "]", ","):
                return SuperPolynomial.constant(self.n, _norm(c))
        v = self.factor()
        while self.peek()[1] == ".":
            tok = self.take()
            v = self.mul(v, self.factor(), tok)
        return _scale(v, c)

    def factor(self) -> Value:
        tok = self.peek()
        kind, val, pos = tok
        if kind == "num":
            self.take()
            return SuperPolynomial.constant(self.n, _norm(Fraction(val)))
        if kind == "name":
            self.take()
            if val == "div":
                self.take("(")
                a = self.expr()
                self.take(")")
                if not isinstance(a, VectorField):
                    self.fail("div() needs a vector field", tok)
                return divergence(a)
            if val == "ham":
                self.take("(")
                a = self.expr()
                self.take(")")
                if not isinstance(a, SuperPolynomial):
                    self.fail("ham() needs a function", tok)
                return self.wrap(lambda: hamiltonian(a, self.split), tok)
            if val == "pb":
                self.take("(")
                a = self.expr()
                self.take(",")
                b = self.expr()
                self.take(")")
                if not (isinstance(a, SuperPolynomial) and isinstance(b, SuperPolynomial)):
                    self.fail("pb() needs two functions", tok)
                return self.wrap(lambda: poisson(a, b, self.split), tok)
            if val[0] == "d":
                j = int(val[1:])
                if not 1 <= j <= self.n:
                    self.fail(f"d{j} outside 1..{self.n}", tok)
                return VectorField.d(self.n, j)
            idx = self.wrap(lambda: self.coords.index(val), tok)
            return SuperPolynomial.monomial(self.n, [idx])
        if val == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        if val == "[":
            self.take()
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("]")
            if isinstance(a, VectorField) and isinstance(b, VectorField):
                return bracket(a, b)
            if isinstance(a, SuperPolynomial) and isinstance(b, SuperPolynomial):
                return self.wrap(lambda: poisson(a, b, self.split), tok)
            self.fail("bracket of a function with a vector field", tok)
        self.fail(f"unexpected {val or 'end of input'!r}", tok)

    def wrap(self, fn, tok):
        try:
            return fn()
        except GrassmannError as exc:
            self.fail(str(exc), tok)

    def add(self, a, b, tok):
        if type(a) is not type(b):
            self.fail("adding a function to a vector field", tok)
        return a + b

    def mul(self, a, b, tok):
        if isinstance(a, SuperPolynomial) and isinstance(b, SuperPolynomial):
            return poly_mul(a, b)
        if isinstance(a, SuperPolynomial) and isinstance(b, VectorField):
            return poly_times_field(a, b)
        self.fail("vector fields only take functions on their left", tok)


def _norm(c: Fraction):
    return int(c) if c.denominator == 1 else c


def _scale(v: Value, c: Fraction) -> Value:
    if c == 1:
        return v
    return v.scale(_norm(c))


def parse(text: str, n: int, split=None) -> Value:
    """Evaluate ``text`` in Lambda(n) / vect(0|n) with the given coordinate names."""
    if not text.strip():
        raise ExprError("empty expression", 0, text)
    return _Parser(text, n, split).parse()


def to_str(v: Value, n: int, split=None, p: int = 0) -> str:
    """Canonical text of a value; coefficients reduced mod ``p`` when p > 0."""
    if p:
        v = _mod(v, p)
    return v.to_str(Coordinates(n, split))


def _mod(v: Value, p: int) -> Value:
    def red(c):
        c = Fraction(c)
        if c.denominator % p == 0:
            raise ExprError(f"coefficient {c} not defined modulo {p}")
        r = c.numerator * pow(c.denominator, -1, p) % p
        return r
    terms = {k: red(c) for k, c in v.terms.items()}
    terms = {k: c for k, c in terms.items() if c}
    return type(v)(v.n, terms)
