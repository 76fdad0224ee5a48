"""Rational functions over Q in the parameters and the deformation variable ``t``."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd as igcd, lcm
from typing import Mapping

from ..errors import Pole, ZeroDenominator
from .poly import T, Poly, divexact, gcd


class RatFunc:
    """Quotient ``num/den`` kept in canonical form.

    Canonical means ``gcd(num, den) = 1`` and the grlex-leading coefficient of
    ``den`` is 1, so equality is structural equality of the two polynomials.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = Poly.const(1) if den is None else _as_poly(den)
        if not den.terms:
            raise ZeroDenominator("denominator is identically zero")
        if not num.terms:
            self.num, self.den = num, Poly.const(1)
            return
        if den.vars:
            g = gcd(num, den)
            if g.vars:
                num = divexact(num, g)
                den = divexact(den, g)
        lead = den.lc()
        if lead != 1:
            num = num.scale(1 / lead)
            den = den.scale(1 / lead)
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        f = object.__new__(cls)
        f.num, f.den = num, den
        return f

    @classmethod
    def var(cls, name: str) -> "RatFunc":
        return cls._raw(Poly.var(name), Poly.const(1))

    # -- inspection ---------------------------------------------------------------

    @property
    def vars(self):
        return tuple(sorted(set(self.num.vars) | set(self.den.vars)))

    def is_constant(self) -> bool:
        return not self.num.vars and not self.den.vars

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def is_polynomial(self) -> bool:
        return not self.den.vars

    def valuation(self, name: str = T) -> int:
        """Order of vanishing at ``name = 0`` (negative for a pole)."""
        if not self.num.terms:
            raise ValueError("valuation of zero")
        return self.num.order(name) - self.den.order(name)

    # -- arithmetic -----------------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        if not self.den.vars and not other.den.vars:
            a = self.num.scale(1 / self.den.constant_value())
            b = other.num.scale(1 / other.den.constant_value())
            return RatFunc._raw(a + b, Poly.const(1))
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.num.terms or not other.num.terms:
            return RatFunc._raw(Poly(), Poly.const(1))
        if not self.den.vars and not other.den.vars:
            c = self.den.constant_value() * other.den.constant_value()
            return RatFunc._raw((self.num * other.num).scale(1 / c), Poly.const(1))
        # cross-cancel before multiplying to keep the gcds small
        g1 = gcd(self.num, other.den)
        g2 = gcd(other.num, self.den)
        a = divexact(self.num, g1) if g1.vars else self.num
        d = divexact(other.den, g1) if g1.vars else other.den
        b = divexact(other.num, g2) if g2.vars else other.num
        c = divexact(self.den, g2) if g2.vars else self.den
        den = c * d
        lead = den.lc()
        return RatFunc._raw((a * b).scale(1 / lead), den.scale(1 / lead))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num.terms:
            raise ZeroDenominator("inverse of zero")
        lead = self.num.lc()
        return RatFunc._raw(self.den.scale(1 / lead), self.num.scale(1 / lead))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise ValueError("only integer powers are supported")
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self.num**k, self.den**k)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num.terms)

    # -- substitution and limits ------------------------------------------------------

    def subs(self, mapping: Mapping[str, object]):
        return _divide(self.num.subs(mapping), self.den.subs(mapping))

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        d = self.den.evaluate(assignment)
        if d == 0:
            raise ZeroDenominator("denominator vanishes at the given point")
        return self.num.evaluate(assignment) / d

    # -- printing ---------------------------------------------------------------------

    def __str__(self):
        if not self.den.vars and self.den.constant_value() == 1:
            return str(self.num)
        # display with integer coefficients: 1/(2*alpha + 1), not 1/2/(alpha + 1/2)
        coeffs = list(self.num.terms.values()) + list(self.den.terms.values())
        big = lcm(*(c.denominator for c in coeffs))
        f = Fraction(big, reduce(igcd, (int(c * big) for c in coeffs)))
        num = str(self.num.scale(f))
        den = str(self.den.scale(f))
        if len(self.num) > 1:
            num = f"({num})"
        if len(self.den) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError(f"cannot build a polynomial from {type(x).__name__}")


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc._raw(x, Poly.const(1))
    if isinstance(x, (int, Fraction)):
        return RatFunc._raw(Poly.const(x), Poly.const(1))
    return NotImplemented


def _divide(a, b):
    if isinstance(a, Poly) and isinstance(b, Poly):
        return RatFunc(a, b)
    return _coerce(a) / _coerce(b)


def normalize(f: RatFunc) -> RatFunc:
    """Canonical form of ``f`` (idempotent; construction already canonicalizes)."""
    return RatFunc(f.num, f.den)


def limit_at_zero(f, name: str = T):
    """Value of ``f`` at ``name = 0`` as a function of the other variables.

    Raises ``Pole`` carrying the pole order when ``f`` is not regular there.
    """
    if isinstance(f, (int, Fraction)):
        return Fraction(f)
    if isinstance(f, Poly):
        f = RatFunc._raw(f, Poly.const(1))
    if not f.num.terms:
        return Fraction(0)
    v = f.valuation(name)
    if v < 0:
        raise Pole(-v)
    if v > 0:
        return Fraction(0)
    zero = {name: Fraction(0)}
    return simplify(RatFunc(f.num.subs(zero), f.den.subs(zero)))


def simplify(x):
    """Demote constant rational functions and polynomials to ``Fraction``."""
    if isinstance(x, RatFunc):
        return x.constant_value() if x.is_constant() else x
    if isinstance(x, Poly):
        return x.constant_value() if x.is_constant() else RatFunc._raw(x, Poly.const(1))
    if isinstance(x, int):
        return Fraction(x)
    return x
