"""A tiny exact expression language for catalog data and CLI parameters.

Grammar (integers only as literals; everything stays in the field):

    expr   := term  (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' integer)?
    atom   := integer | name | 'sqrt' '(' expr ')' | '(' expr ')'

Names resolve from an environment of FieldElements; 'i' is the imaginary
unit, and in rational-function mode 'x' is the free variable.  Values are
FieldElements until 'x' enters, after which they are rational functions.
"""

from __future__ import annotations

import re

from .field import FieldElement, I, fe
from .poly import LaurentPolynomial
from .ratfunc import RF_X, RationalFunction

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\*\*|[()+\-*/^,])")


class ExprError(ValueError):
    pass


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprError(f"bad token at {text[pos:]!r}")
        tok = m.group(1)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, env, allow_x):
        self.tokens = tokens
        self.pos = 0
        self.env = env
        self.allow_x = allow_x

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ExprError(f"expected {expected or 'token'}, got {tok!r}")
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        if self.peek() is not None:
            raise ExprError(f"trailing input {self.tokens[self.pos:]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            tok = self.take()
            if not tok.isdigit():
                raise ExprError(f"exponent must be an integer, got {tok!r}")
            n = int(tok)
            return base ** (-n if neg else n)
        return base

    def atom(self):
        tok = self.take()
        if tok.isdigit():
            return fe(int(tok))
        if tok == "(":
            value = self.expr()
            self.take(")")
            return value
        if tok == "sqrt":
            self.take("(")
            arg = self.expr()
            self.take(")")
            if isinstance(arg, RationalFunction):
                raise ExprError("sqrt of a rational function")
            return arg.sqrt()
        if re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", tok):
            if tok in ("i", "I"):
                return I
            if tok == "x":
                if not self.allow_x:
                    raise ExprError("'x' not allowed in a scalar expression")
                return RF_X
            if tok in self.env:
                value = self.env[tok]
                return value
            raise ExprError(f"unknown name {tok!r}")
        raise ExprError(f"unexpected token {tok!r}")


def eval_scalar(text: str, env=None) -> FieldElement:
    """Evaluate a scalar expression to a FieldElement."""
    value = _Parser(_tokenize(text), env or {}, allow_x=False).parse()
    if isinstance(value, RationalFunction):  # pragma: no cover - guarded
        raise ExprError("expected a scalar")
    return value

def eval_ratfunc(text: str, env=None) -> RationalFunction:
    """Evaluate an expression in x to a RationalFunction."""
    value = _Parser(_tokenize(text), env or {}, allow_x=True).parse()
    if isinstance(value, FieldElement):
        return RationalFunction.constant(value)
    return value


def eval_exponent(text: str, env=None) -> LaurentPolynomial:
    """Evaluate an expression in x to a Laurent polynomial exponent."""
    value = eval_ratfunc(text, env)
    num, den = value.num, value.den
    # denominator must be a monomial x^k
    k = den.degree
    if any(not c.is_zero for c in den.coeffs[:-1]):
        raise ExprError(f"exponent {text!r} is not a Laurent polynomial")
    terms = {}
    for m, c in enumerate(num.coeffs):
        terms[m - k] = c
    return LaurentPolynomial(terms)


def parse_assignments(text: str, env=None) -> dict:
    """Parse 'name=expr,name=expr' into a FieldElement mapping."""
    out = {}
    if not text.strip():
        return out
    for piece in text.split(","):
        if "=" not in piece:
            raise ExprError(f"expected name=value, got {piece!r}")
        name, value = piece.split("=", 1)
        out[name.strip()] = eval_scalar(value.strip(), env)
    return out
