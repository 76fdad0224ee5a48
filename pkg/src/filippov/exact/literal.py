"""Parse and print scalar literals such as ``"(2*alpha+1)/(t^2)"``.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' exponent)?
    exponent := ['+' | '-'] INT | '(' ['+' | '-'] INT ')'
    atom   := INT | NAME | '(' expr ')'

Names match ``[a-zA-Z][a-zA-Z0-9_]*``; ``t`` is the deformation variable.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import LiteralSyntaxError, ZeroDenominator
from .ratfunc import RatFunc, simplify

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise LiteralSyntaxError(f"unexpected input at {pos}: {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            if op not in "+-*/^()":
                raise LiteralSyntaxError(f"unexpected character {op!r} in {text!r}")
            out.append(("op", op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        kind, val = self.peek()
        if kind is None:
            raise LiteralSyntaxError(f"unexpected end of {self.text!r}")
        if op is not None and val != op:
            raise LiteralSyntaxError(f"expected {op!r} in {self.text!r}")
        self.i += 1
        return kind, val

    def parse(self):
        if not self.toks:
            raise LiteralSyntaxError("empty scalar literal")
        value = self.expr()
        if self.i != len(self.toks):
            raise LiteralSyntaxError(f"trailing input in {self.text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs == 0:
                    raise ZeroDenominator(f"division by zero in {self.text!r}")
                value = value / rhs
        return value

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            exp = self.exponent()
            if exp < 0 and base == 0:
                raise ZeroDenominator(f"negative power of zero in {self.text!r}")
            return base**exp
        return base

    def exponent(self) -> int:
        paren = self.peek() == ("op", "(")
        if paren:
            self.take()
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        kind, val = self.take()
        if kind != "int":
            raise LiteralSyntaxError(f"exponent must be an integer in {self.text!r}")
        if paren:
            self.take(")")
        return sign * val

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return Fraction(val)
        if kind == "name":
            return RatFunc.var(val)
        if val == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise LiteralSyntaxError(f"unexpected {val!r} in {self.text!r}")


def parse_scalar(text) -> Fraction | RatFunc:
    """Exact scalar from a literal; constant results come back as ``Fraction``."""
    if isinstance(text, bool):
        raise LiteralSyntaxError("booleans are not scalars")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise LiteralSyntaxError(f"scalar literal must be a string, got {type(text).__name__}")
    return simplify(_Parser(text).parse())


def format_scalar(x) -> str:
    return str(simplify(x))
