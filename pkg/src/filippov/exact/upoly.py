"""Dense univariate polynomials over an exact field, as coefficient lists.

Coefficients run from degree 0 upward. Elements may be ``Fraction`` or
``RatFunc``; only field arithmetic and comparison with 0 are used.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Sequence

from sympy import factorint


def trim(p: List) -> List:
    while p and p[-1] == 0:
        p.pop()
    return p


def monic(p: Sequence) -> List:
    p = trim(list(p))
    if not p:
        return p
    lead = p[-1]
    return [c / lead for c in p]


def derivative(p: Sequence) -> List:
    return trim([i * p[i] for i in range(1, len(p))])


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def divmod_(a: Sequence, b: Sequence):
    a = trim(list(a))
    b = trim(list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [0] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] = a[i + shift] - c * bc
        a.pop()
        trim(a)
    return trim(q), a


def gcd(a: Sequence, b: Sequence) -> List:
    a = trim(list(a))
    b = trim(list(b))
    while b:
        _, r = divmod_(a, b)
        a, b = b, r
    return monic(a)


def squarefree(p: Sequence) -> List:
    """Yun's algorithm: ``[(factor, multiplicity)]`` with monic squarefree factors."""
    f = monic(p)
    if len(f) <= 1:
        return []
    out = []
    df = derivative(f)
    a = gcd(f, df)
    b, _ = divmod_(f, a)
    c, _ = divmod_(df, a)
    i = 1
    while len(b) > 1:
        db = derivative(b)
        d = trim([_get(c, k) - _get(db, k) for k in range(max(len(c), len(db)))])
        g = gcd(b, d) if d else monic(b)
        if len(g) > 1:
            out.append((g, i))
        b, _ = divmod_(b, g)
        c = divmod_(d, g)[0] if d else []
        i += 1
    return out


def _get(p, k):
    return p[k] if k < len(p) else 0


def from_roots(roots: Sequence) -> List:
    p: List = [Fraction(1)]
    for r in roots:
        nxt = [0] * (len(p) + 1)
        for i, c in enumerate(p):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - r * c
        p = nxt
    return p


def _divisors(m: int) -> List[int]:
    m = abs(m)
    divs = [1]
    for p, e in factorint(m).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def rational_roots(p: Sequence[Fraction]) -> List[Fraction]:
    """Distinct rational roots of a polynomial with rational coefficients.

    Denominators are cleared, then candidates ``±a/b`` with ``a`` dividing the
    trailing and ``b`` the leading coefficient are tested exactly.
    """
    p = trim([Fraction(c) for c in p])
    if len(p) <= 1:
        return []
    roots = []
    k = 0
    while p[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
        p = p[k:]
    if len(p) == 1:
        return roots
    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    seen = set()
    lead_divs = _divisors(ints[-1])
    for a in _divisors(ints[0]):
        for b in lead_divs:
            for cand in (Fraction(a, b), Fraction(-a, b)):
                if cand in seen:
                    continue
                seen.add(cand)
                if evaluate(ints, cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def char_poly(m: Sequence[Sequence]) -> List:
    """Characteristic polynomial det(x*I - M) by Faddeev-LeVerrier."""
    k = len(m)
    if k == 0:
        return [Fraction(1)]
    coeffs = [0] * (k + 1)
    coeffs[k] = Fraction(1)
    # M_1 = I, c_{k-1} = -tr(M); M_{j+1} = M M_j + c_{k-j} I
    mj = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    for step in range(1, k + 1):
        am = _matmul(m, mj)
        c = -sum((am[i][i] for i in range(k)), 0) / step
        coeffs[k - step] = c
        if step < k:
            mj = [[am[i][j] + (c if i == j else 0) for j in range(k)] for i in range(k)]
    return coeffs


def _matmul(a, b):
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        r = []
        for j in range(n):
            s = 0
            for x, brow in zip(row, b):
                if x != 0:
                    s = s + x * brow[j]
            r.append(s)
        out.append(r)
    return out
