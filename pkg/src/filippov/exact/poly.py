"""Sparse multivariate polynomials over Q in named variables.

Terms are stored as ``{exponent_tuple: Fraction}`` against an ordered tuple of
variable names. Variables are kept in the canonical order: the deformation
variable ``t`` first, then the remaining names alphabetically. Combined with
graded lexicographic comparison of exponent tuples this makes ``t`` the
greatest variable. Unused variables are dropped, so two equal polynomials are
always structurally identical.
"""

from __future__ import annotations

from fractions import Fraction
from operator import add
from typing import Dict, Iterable, Mapping, Tuple

from ..errors import MissingVariable

T = "t"

Exps = Tuple[int, ...]


def var_key(name: str):
    return (0, "") if name == T else (1, name)


def _sorted_vars(names: Iterable[str]) -> Tuple[str, ...]:
    return tuple(sorted(set(names), key=var_key))


def grlex(exps: Exps):
    return (sum(exps), exps)


class Poly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str] = (), terms: Mapping[Exps, object] | None = None):
        vars = tuple(vars)
        if terms is None:
            terms = {}
        canon = _sorted_vars(vars)
        if canon != vars:
            if len(canon) != len(vars):
                raise ValueError(f"repeated variable names in {vars}")
            perm = [vars.index(v) for v in canon]
            terms = {tuple(e[i] for i in perm): c for e, c in terms.items()}
            vars = canon
        clean: Dict[Exps, Fraction] = {}
        for e, c in terms.items():
            if len(e) != len(vars):
                raise ValueError("exponent vector length does not match variables")
            if c:
                clean[e] = c if type(c) is Fraction else Fraction(c)
        used = [i for i in range(len(vars)) if any(e[i] for e in clean)]
        if len(used) != len(vars):
            vars = tuple(vars[i] for i in used)
            clean = {tuple(e[i] for i in used): c for e, c in clean.items()}
        self.vars = vars
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars: Tuple[str, ...], terms: Dict[Exps, Fraction]) -> "Poly":
        # caller guarantees canonical vars, nonzero coefficients, all vars used
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "Poly":
        c = Fraction(c)
        return cls._raw((), {(): c} if c else {})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls._raw((name,), {(1,): Fraction(1)})

    @classmethod
    def monomial(cls, powers: Mapping[str, int], coeff=1) -> "Poly":
        names = [v for v, e in powers.items() if e]
        return cls(names, {tuple(powers[v] for v in names): Fraction(coeff)})

    # -- inspection ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self) -> Fraction:
        if self.vars:
            raise ValueError("polynomial is not constant")
        return self.terms.get((), Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading(self) -> Tuple[Exps, Fraction]:
        e = max(self.terms, key=grlex)
        return e, self.terms[e]

    def lc(self) -> Fraction:
        return self.leading()[1]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, name: str) -> int:
        if name not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def order(self, name: str) -> int:
        """Smallest exponent of ``name`` over all terms (0 for the zero poly)."""
        if not self.terms or name not in self.vars:
            return 0
        i = self.vars.index(name)
        return min(e[i] for e in self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    # -- arithmetic -----------------------------------------------------------------

    def _aligned(self, other: "Poly"):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        vars = _sorted_vars(self.vars + other.vars)
        return vars, _lift(self, vars), _lift(other, vars)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        vars, a, b = self._aligned(other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(vars, out) if _may_drop(vars, out) else Poly._raw(vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.vars, {e: -c for e, c in self.terms.items()})

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
        if not self.terms or not other.terms:
            return Poly._raw((), {})
        if not other.vars:
            c = other.terms[()]
            return Poly._raw(self.vars, {e: v * c for e, v in self.terms.items()})
        if not self.vars:
            c = self.terms[()]
            return Poly._raw(other.vars, {e: v * c for e, v in other.terms.items()})
        vars, a, b = self._aligned(other)
        out: Dict[Exps, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(map(add, e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly(vars, out) if _may_drop(vars, out) else Poly._raw(vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly._raw((), {})
        return Poly._raw(self.vars, {e: v * c for e, v in self.terms.items()})

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            if not self.vars:
                self._hash = hash(self.terms.get((), Fraction(0)))
            else:
                self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- evaluation -----------------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        """Exact value at a full rational assignment of the variables."""
        missing = [v for v in self.vars if v not in assignment]
        if missing:
            raise MissingVariable(f"no value for {missing}")
        vals = [Fraction(assignment[v]) for v in self.vars]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term *= v**k
            total += term
        return total

    def subs(self, mapping: Mapping[str, object]):
        """Substitute some variables by scalars, polynomials or rational functions.

        The result type follows ordinary arithmetic on the substituted values.
        """
        idx = [i for i, v in enumerate(self.vars) if v in mapping]
        if not idx:
            return self
        keep = [i for i in range(len(self.vars)) if i not in idx]
        keep_vars = tuple(self.vars[i] for i in keep)
        # group terms by the untouched part so each distinct exponent pattern of the
        # substituted variables is evaluated once
        powers: Dict[Tuple[int, int], object] = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = mapping[self.vars[i]] ** k
            return powers[key]

        groups: Dict[Exps, Dict[Exps, Fraction]] = {}
        for e, c in self.terms.items():
            sub_e = tuple(e[i] for i in idx)
            groups.setdefault(sub_e, {})[tuple(e[i] for i in keep)] = c
        total = None
        for sub_e, rest in groups.items():
            factor = None
            for i, k in zip(idx, sub_e):
                if k:
                    pk = power(i, k)
                    factor = pk if factor is None else factor * pk
            rest_poly = Poly(keep_vars, rest)
            piece = rest_poly if factor is None else factor * rest_poly
            total = piece if total is None else total + piece
        return total if total is not None else Poly()

    # -- univariate views -------------------------------------------------------------

    def coeffs_in(self, name: str) -> Dict[int, "Poly"]:
        """Split into ``{degree: coefficient}`` with respect to one variable."""
        if name not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(name)
        rest_vars = self.vars[:i] + self.vars[i + 1:]
        parts: Dict[int, Dict[Exps, Fraction]] = {}
        for e, c in self.terms.items():
            parts.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {d: Poly(rest_vars, t) for d, t in parts.items()}

    @classmethod
    def from_coeffs(cls, name: str, coeffs: Mapping[int, "Poly"]) -> "Poly":
        total = Poly()
        x = Poly.var(name)
        for d, c in coeffs.items():
            if c:
                total = total + c * x**d
        return total

    # -- printing -------------------------------------------------------------------

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        names = sorted(range(len(self.vars)), key=lambda i: self.vars[i])
        for e in sorted(self.terms, key=grlex, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                self.vars[i] if e[i] == 1 else f"{self.vars[i]}^{e[i]}" for i in names if e[i]
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


def _coerce(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    return NotImplemented


def _lift(p: Poly, vars: Tuple[str, ...]) -> Dict[Exps, Fraction]:
    pos = [vars.index(v) for v in p.vars]
    n = len(vars)
    out = {}
    for e, c in p.terms.items():
        full = [0] * n
        for i, k in zip(pos, e):
            full[i] = k
        out[tuple(full)] = c
    return out


def _may_drop(vars, terms) -> bool:
    # after cancellation some variable can disappear; recheck only then
    if not terms:
        return bool(vars)
    for i in range(len(vars)):
        if not any(e[i] for e in terms):
            return True
    return False


def poly_eval(p: Poly, assignment: Mapping[str, object]) -> Fraction:
    return p.evaluate(assignment)


# -- exact division and gcd ---------------------------------------------------------


def divexact(a: Poly, b: Poly) -> Poly:
    """Quotient of ``a`` by ``b``; raises ``ValueError`` when ``b`` does not divide ``a``."""
    if not b.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not b.vars:
        return a.scale(1 / b.terms[()])
    if b.is_monomial():
        (be, bc), = b.terms.items()
        vars, at, bt = a._aligned(b)
        (be,) = bt.keys()
        out = {}
        for e, c in at.items():
            q = tuple(x - y for x, y in zip(e, be))
            if min(q) < 0:
                raise ValueError("inexact polynomial division")
            out[q] = c / bc
        return Poly(vars, out)
    vars, at, bt = a._aligned(b)
    blead = max(bt, key=grlex)
    bcoef = bt[blead]
    rem = dict(at)
    quot: Dict[Exps, Fraction] = {}
    while rem:
        lead = max(rem, key=grlex)
        q = tuple(x - y for x, y in zip(lead, blead))
        if min(q) < 0:
            raise ValueError("inexact polynomial division")
        qc = rem[lead] / bcoef
        quot[q] = qc
        for e, c in bt.items():
            key = tuple(map(add, e, q))
            s = rem.get(key, 0) - qc * c
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    return Poly(vars, quot)


def _monic(p: Poly) -> Poly:
    return p.scale(1 / p.lc()) if p.terms else p


def _monomial_gcd(m: Poly, p: Poly) -> Poly:
    (me, _), = m.terms.items()
    powers = {}
    for v, k in zip(m.vars, me):
        k = min(k, p.order(v)) if v in p.vars else 0
        if k:
            powers[v] = k
    return Poly.monomial(powers)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic (under grlex) greatest common divisor over Q."""
    if not a.terms:
        return _monic(b)
    if not b.terms:
        return _monic(a)
    if not a.vars or not b.vars:
        return Poly.const(1)
    if a.is_monomial():
        return _monomial_gcd(a, b)
    if b.is_monomial():
        return _monomial_gcd(b, a)
    return _monic(_gcd_rec(a, b))


def _gcd_rec(a: Poly, b: Poly) -> Poly:
    common = [v for v in _sorted_vars(a.vars + b.vars) if v in a.vars and v in b.vars]
    if not common:
        # a common divisor can only involve shared variables
        return Poly.const(1)
    x = common[0]
    ca = _content(a, x)
    cb = _content(b, x)
    g_content = gcd(ca, cb)
    pa = divexact(a, ca)
    pb = divexact(b, cb)
    if pa.degree(x) < pb.degree(x):
        pa, pb = pb, pa
    while pb.terms and pb.degree(x) > 0:
        r = _prem(pa, pb, x)
        pa, pb = pb, (_primitive(r, x) if r.terms else r)
    if pb.terms:
        # remainder sequence reached a nonzero constant in x: primitive gcd is 1
        g = Poly.const(1)
    else:
        g = _primitive(pa, x)
    return g_content * g


def _content(p: Poly, x: str) -> Poly:
    """gcd of the coefficients of ``p`` viewed as a polynomial in ``x``."""
    coeffs = list(p.coeffs_in(x).values())
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = gcd(g, c)
    if g.is_constant():
        return Poly.const(1)
    return _monic(g)


def _primitive(p: Poly, x: str) -> Poly:
    q = divexact(p, _content(p, x))
    return _monic(q)


def _prem(a: Poly, b: Poly, x: str) -> Poly:
    """Pseudo-remainder of ``a`` by ``b`` in the variable ``x``."""
    bc = b.coeffs_in(x)
    db = max(bc)
    lb = bc[db]
    r = a
    xp = Poly.var(x)
    while r.terms and r.degree(x) >= db:
        rc = r.coeffs_in(x)
        dr = max(rc)
        lr = rc[dr]
        shift = xp ** (dr - db)
        if lb.is_constant():
            r = r - b * shift * lr.scale(1 / lb.constant_value())
        else:
            r = r * lb - b * shift * lr
    return r
