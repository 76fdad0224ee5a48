"""The (n+1)-dimensional n-ary Filippov algebras, their witnesses and automorphism forms.

Internal indices are 0-based: ``e_1`` of the usual tables is index 0 here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .degeneration import Witness
from .errors import ConstraintViolated, InvalidId
from .exact import RatFunc, parse_scalar, simplify
from .structure import NAryStructure, zero_algebra

ZERO = Fraction(0)
ONE = Fraction(1)
ALPHA = "alpha"
TAGS = ("Zero", "B", "C1", "C2", "C3", "D")


@dataclass(frozen=True)
class CatalogId:
    """Catalog entry; ``alpha=None`` on C2 means the symbolic parameter."""

    tag: str
    n: int
    r: Optional[int] = None
    alpha: Optional[Fraction] = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise InvalidId(f"unknown catalog tag {self.tag!r}")
        if self.n < 2:
            raise InvalidId("arity must be at least 2")
        if self.tag == "D":
            if self.r is None or not 3 <= self.r <= self.n + 1:
                raise InvalidId(f"D_r needs 3 <= r <= n+1, got r={self.r}, n={self.n}")
        elif self.r is not None:
            raise InvalidId("only D takes r")
        if self.alpha is not None:
            if self.tag != "C2":
                raise InvalidId("only C2 takes alpha")
            object.__setattr__(self, "alpha", Fraction(self.alpha))

    @property
    def name(self) -> str:
        if self.tag == "Zero":
            return "0"
        if self.tag == "D":
            return f"D{self.r}"
        if self.tag == "C2":
            return "C2(alpha)" if self.alpha is None else f"C2({self.alpha})"
        return self.tag

    @classmethod
    def parse(cls, text: str, n: int) -> "CatalogId":
        """Accept names such as ``B``, ``D4``, ``C2``, ``C2(-1/4)``, ``0``."""
        s = text.strip()
        if s in ("0", "Zero", "zero"):
            return cls("Zero", n)
        if s in ("B", "C1", "C3"):
            return cls(s, n)
        if s.startswith("D") and s[1:].isdigit():
            return cls("D", n, r=int(s[1:]))
        if s in ("C2", "C2(alpha)"):
            return cls("C2", n)
        if s.startswith("C2(") and s.endswith(")"):
            val = parse_scalar(s[3:-1])
            if not isinstance(val, Fraction):
                raise InvalidId(f"C2 parameter must be rational, got {s!r}")
            return cls("C2", n, alpha=val)
        raise InvalidId(f"unknown catalog name {text!r}")


def _all_but(k: int, i: int) -> Tuple[int, ...]:
    return tuple(j for j in range(k) if j != i)


def _vec(k: int, entries: Mapping[int, object]) -> Tuple:
    return tuple(simplify(entries.get(j, ZERO)) for j in range(k))


def make(cid: CatalogId) -> NAryStructure:
    n, k = cid.n, cid.n + 1
    if cid.tag == "Zero":
        return zero_algebra(n, k)
    consts: Dict[Tuple[int, ...], Tuple] = {}
    if cid.tag == "B":
        consts[_all_but(k, 0)] = _vec(k, {0: ONE})
    elif cid.tag == "C1":
        consts[_all_but(k, 0)] = _vec(k, {0: ONE})
        consts[_all_but(k, 1)] = _vec(k, {1: ONE})
    elif cid.tag == "C2":
        a = RatFunc.var(ALPHA) if cid.alpha is None else cid.alpha
        consts[_all_but(k, 0)] = _vec(k, {0: a, 1: ONE})
        consts[_all_but(k, 1)] = _vec(k, {1: ONE})
    elif cid.tag == "C3":
        consts[_all_but(k, 1)] = _vec(k, {0: ONE})
        consts[_all_but(k, 0)] = _vec(k, {1: ONE})
    elif cid.tag == "D":
        for i in range(cid.r):
            consts[_all_but(k, i)] = _vec(k, {i: ONE})
    return NAryStructure(n, k, consts, cid.name)


def catalog_ids(n: int, alphas: Sequence = ()) -> List[CatalogId]:
    """Every catalog entry at arity n, with C2 symbolic plus the requested rational members."""
    out = [CatalogId("Zero", n), CatalogId("B", n), CatalogId("C1", n), CatalogId("C2", n)]
    out += [CatalogId("C2", n, alpha=a) for a in alphas]
    out.append(CatalogId("C3", n))
    out += [CatalogId("D", n, r=r) for r in range(3, n + 2)]
    return out


# -- witnesses --------------------------------------------------------------------------


def _t() -> RatFunc:
    return RatFunc.var("t")


def _basis(k: int, rows: Mapping[int, Mapping[int, object]]) -> Tuple[Tuple, ...]:
    """Identity matrix with the given rows replaced."""
    out = []
    for i in range(k):
        if i in rows:
            out.append(_vec(k, rows[i]))
        else:
            out.append(_vec(k, {i: ONE}))
    return tuple(out)


def _witness(src: CatalogId, tgt: CatalogId, rows, label, subst=None, source_name=None) -> Witness:
    k = src.n + 1
    return Witness(
        source=make(src),
        basis=_basis(k, rows),
        target=make(tgt),
        param_subst=dict(subst or {}),
        source_id=source_name or src.name,
        target_id=tgt.name,
        label=label,
    )


def witness_c1_b(n: int) -> Witness:
    t = _t()
    return _witness(CatalogId("C1", n), CatalogId("B", n), {0: {0: t}, 2: {2: t}}, "C1 -> B")


def witness_c2_b(n: int, alpha: Optional[Fraction] = None) -> Witness:
    t = _t()
    rows = {0: {1: t}, 1: {0: ONE}, 2: {2: t}}
    return _witness(CatalogId("C2", n, alpha=alpha), CatalogId("B", n), rows, "C2 -> B")


def witness_c2_c3(n: int) -> Witness:
    t = _t()
    rows = {0: {0: ONE, 1: Fraction(-2)}, 1: {1: -2 * t}, 2: {2: Fraction(2)}}
    return _witness(CatalogId("C2", n, alpha=Fraction(-1, 4)), CatalogId("C3", n), rows, "C2(-1/4) -> C3")


def witness_d3_c1(n: int) -> Witness:
    t = _t()
    return _witness(CatalogId("D", n, r=3), CatalogId("C1", n), {0: {0: t}, 1: {1: t}}, "D3 -> C1")


def witness_d_chain(n: int, r: int) -> Witness:
    if not 3 < r <= n + 1:
        raise InvalidId(f"D_r -> D_(r-1) needs 3 < r <= n+1, got r={r}")
    t = _t()
    rows = {i: {i: t} for i in range(r - 1)}
    rows[r - 1] = {r - 1: t ** (3 - r)}
    return _witness(CatalogId("D", n, r=r), CatalogId("D", n, r=r - 1), rows, f"D{r} -> D{r - 1}")


def witness_family_c1(n: int) -> Witness:
    """C2(*) -> C1 with alpha = t^-2.

    In the basis E2 = t e2, E3 = t e3 the family member C2(t^-2) reads
    [E2, E3, ...] = E1 + t E2 and [E1, E3, ...] = E2, which tends to C1.
    """
    t = _t()
    rows = {1: {1: t}, 2: {2: t}}
    return _witness(
        CatalogId("C2", n), CatalogId("C1", n), rows, "C2(*) -> C1",
        subst={ALPHA: t ** -2}, source_name="C2(*)",
    )


def builtin_witnesses(n: int) -> List[Witness]:
    out = [witness_c1_b(n), witness_c2_b(n), witness_c2_c3(n), witness_d3_c1(n)]
    out += [witness_d_chain(n, r) for r in range(4, n + 2)]
    out.append(witness_family_c1(n))
    return out


# -- automorphism forms ---------------------------------------------------------------------


def _block(k: int, placements) -> List[List]:
    m = [[ZERO] * k for _ in range(k)]
    for r0, c0, blk in placements:
        for i, row in enumerate(blk):
            for j, x in enumerate(row):
                m[r0 + i][c0 + j] = simplify(x)
    return m


def _square(name: str, m, size: int):
    if len(m) != size or any(len(r) != size for r in m):
        raise ConstraintViolated(f"{name} must be {size}x{size}")
    return [[Fraction(x) for x in r] for r in m]


def _rect(name: str, m, rows: int, cols: int):
    if m is None:
        return [[ZERO] * cols for _ in range(rows)]
    if len(m) != rows or any(len(r) != cols for r in m):
        raise ConstraintViolated(f"{name} must be {rows}x{cols}")
    return [[Fraction(x) for x in r] for r in m]


def signature(r: int) -> List[List[Fraction]]:
    return [[Fraction((-1) ** i) if i == j else ZERO for j in range(r)] for i in range(r)]


def automorphism_sample(cid: CatalogId, params: Mapping[str, object]) -> List[List[Fraction]]:
    """Matrix (column j = image of e_j) of the automorphism with the given free parameters.

    Free parameters per family:

    * B: ``U`` (n x n, invertible), ``a`` (length n first-row entries).
    * C1: ``U`` ((n-1) x (n-1), det U = +-1), ``a``, ``b`` (a^2 != b^2), ``V`` (2 x (n-1)).
    * C2: ``U`` (det U = 1), ``a``, ``b`` (a(a+b) != alpha b^2), ``V``.
    * C3: ``U`` (2 x 2, invertible), ``W`` (det W = 1), ``V``.
    * D_r: ``Q`` (Q S_r Q^T = S_r), ``W`` (invertible), ``V``, ``a`` with
      a^(r-2) = 1 / (det Q det W); the U-block is ``a Q``.
    """
    n, k = cid.n, cid.n + 1
    p = dict(params)
    if cid.tag == "B":
        u = _square("U", p["U"], n)
        du = linalg.det(u)
        if du == 0:
            raise ConstraintViolated("U invertible")
        a = [Fraction(x) for x in p.get("a", [0] * n)]
        if len(a) != n:
            raise ConstraintViolated(f"a must have length {n}")
        return _block(k, [(0, 0, [[du]]), (0, 1, [a]), (1, 1, u)])
    if cid.tag in ("C1", "C2"):
        u = _square("U", p["U"], n - 1)
        du = linalg.det(u)
        a, b = Fraction(p["a"]), Fraction(p["b"])
        v = _rect("V", p.get("V"), 2, n - 1)
        if cid.tag == "C1":
            if du not in (1, -1):
                raise ConstraintViolated("det(U) = +-1")
            if a * a == b * b:
                raise ConstraintViolated("a^2 != b^2")
            top = [[a, b * du], [b, a * du]]
        else:
            if cid.alpha is None:
                raise InvalidId("automorphism sampling needs a rational alpha")
            al = cid.alpha
            if du != 1:
                raise ConstraintViolated("det(U) = 1")
            if a * (a + b) == al * b * b:
                raise ConstraintViolated("a(a+b) != alpha*b^2")
            top = [[a, al * b], [b, a + b]]
        return _block(k, [(0, 0, top), (0, 2, v), (2, 2, u)])
    if cid.tag == "C3":
        u = _square("U", p["U"], 2)
        if linalg.det(u) == 0:
            raise ConstraintViolated("U invertible")
        w = _square("W", p["W"], n - 1)
        if linalg.det(w) != 1:
            raise ConstraintViolated("det(W) = 1")
        v = _rect("V", p.get("V"), 2, n - 1)
        return _block(k, [(0, 0, u), (0, 2, v), (2, 2, w)])
    if cid.tag == "D":
        r = cid.r
        q = _square("Q", p["Q"], r)
        s = signature(r)
        if linalg.matmul(linalg.matmul(q, s), linalg.transpose(q)) != s:
            raise ConstraintViolated("Q S_r Q^T = S_r")
        w = _square("W", p.get("W", []), k - r) if k > r else []
        dw = linalg.det(w) if k > r else ONE
        if dw == 0:
            raise ConstraintViolated("W invertible")
        a = Fraction(p["a"])
        if a == 0 or a ** (r - 2) * linalg.det(q) * dw != 1:
            raise ConstraintViolated("a^(r-2) = 1/(det(U)det(W))")
        v = _rect("V", p.get("V"), r, k - r)
        placements = [(0, 0, linalg.scale_matrix(a, q))]
        if k > r:
            placements += [(0, r, v), (r, r, w)]
        return _block(k, placements)
    raise InvalidId(f"no automorphism form for {cid.name}")


def _rand_q(rng: random.Random, lo: int = -3, hi: int = 3) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 3))


def _rand_matrix(rng, rows, cols):
    return [[_rand_q(rng) for _ in range(cols)] for _ in range(rows)]


def _rand_invertible(rng, size):
    while True:
        m = _rand_matrix(rng, size, size)
        if linalg.det(m) != 0:
            return m


def _with_det(rng, size, target):
    """Random matrix of the given nonzero determinant (first row rescaled)."""
    m = _rand_invertible(rng, size)
    f = target / linalg.det(m)
    m[0] = [x * f for x in m[0]]
    return m


def _s_orthogonal(rng, r):
    """Rational point of O(S_r): Cayley transform of an S_r-skew matrix, times a signed permutation."""
    s = signature(r)
    while True:
        m = [[ZERO] * r for _ in range(r)]
        for i in range(r):
            for j in range(i + 1, r):
                x = _rand_q(rng, -2, 2)
                m[i][j], m[j][i] = x, -x
        a = linalg.matmul(m, s)
        i_plus = [[(ONE if i == j else ZERO) + a[i][j] for j in range(r)] for i in range(r)]
        i_minus = [[(ONE if i == j else ZERO) - a[i][j] for j in range(r)] for i in range(r)]
        if linalg.det(i_minus) != 0:
            break
    cayley = linalg.matmul(i_plus, linalg.inverse(i_minus))
    # signed permutation preserving the parity classes of the indices
    perm = list(range(r))
    evens, odds = perm[0::2], perm[1::2]
    rng.shuffle(evens)
    rng.shuffle(odds)
    target = [None] * r
    target[0::2], target[1::2] = evens, odds
    p = [[ZERO] * r for _ in range(r)]
    for i, j in enumerate(target):
        p[i][j] = Fraction(rng.choice((-1, 1)))
    return linalg.matmul(cayley, p)


def random_automorphism_params(cid: CatalogId, rng: random.Random) -> Dict[str, object]:
    """Random admissible free parameters for :func:`automorphism_sample`."""
    n = cid.n
    if cid.tag == "B":
        return {"U": _rand_invertible(rng, n), "a": [_rand_q(rng) for _ in range(n)]}
    if cid.tag in ("C1", "C2"):
        if cid.tag == "C1":
            u = _with_det(rng, n - 1, Fraction(rng.choice((-1, 1))))
        else:
            u = _with_det(rng, n - 1, ONE)
        while True:
            a, b = _rand_q(rng), _rand_q(rng)
            if cid.tag == "C1" and a * a != b * b:
                break
            if cid.tag == "C2" and a * (a + b) != cid.alpha * b * b:
                break
        return {"U": u, "a": a, "b": b, "V": _rand_matrix(rng, 2, n - 1)}
    if cid.tag == "C3":
        return {"U": _rand_invertible(rng, 2), "W": _with_det(rng, n - 1, ONE), "V": _rand_matrix(rng, 2, n - 1)}
    if cid.tag == "D":
        r, k = cid.r, n + 1
        q = _s_orthogonal(rng, r)
        dq = linalg.det(q)  # +-1
        if k > r:
            a = Fraction(rng.choice((-2, -1, 1, 2)), rng.choice((1, 2, 3)))
            target = 1 / (a ** (r - 2) * dq)
            return {"Q": q, "a": a, "W": _with_det(rng, k - r, target), "V": _rand_matrix(rng, r, k - r)}
        # no W block: need a^(r-2) = 1/det Q with det Q = +-1
        if dq == -1 and r % 2 == 0:
            q[0] = [-x for x in q[0]]
            dq = ONE
        if dq == 1:
            a = Fraction(rng.choice((-1, 1))) if r % 2 == 0 else ONE
        else:
            a = Fraction(-1)
        params = {"Q": q, "a": a}
        return params
    raise InvalidId(f"no automorphism form for {cid.name}")


def violating_automorphism_params(cid: CatalogId, rng: random.Random) -> Tuple[Dict[str, object], str]:
    """Parameters breaking exactly one constraint, together with that constraint's text."""
    p = random_automorphism_params(cid, rng)
    n = cid.n
    if cid.tag == "B":
        p["U"] = [[ZERO] * n] + [row for row in p["U"][1:]]
        return p, "U invertible"
    if cid.tag == "C1":
        if rng.random() < 0.5:
            p["b"] = p["a"] * rng.choice((-1, 1))
            return p, "a^2 != b^2"
        p["U"] = _with_det(rng, n - 1, Fraction(2))
        return p, "det(U) = +-1"
    if cid.tag == "C2":
        b = p["b"] if p["b"] != 0 else ONE
        # a(a+b) = alpha b^2 has rational roots only for some alpha; choose b so it does
        al = cid.alpha
        if rng.random() < 0.5 and al is not None:
            # set a = b*x with x^2 + x - alpha = 0 solvable when 1 + 4 alpha is a square
            disc = 1 + 4 * al
            root = _rational_sqrt(disc)
            if root is not None:
                p["a"], p["b"] = b * (-1 + root) / 2, b
                return p, "a(a+b) != alpha*b^2"
        p["U"] = _with_det(rng, n - 1, Fraction(3))
        return p, "det(U) = 1"
    if cid.tag == "C3":
        if rng.random() < 0.5:
            p["W"] = _with_det(rng, n - 1, Fraction(2))
            return p, "det(W) = 1"
        p["U"] = [[ONE, ONE], [ONE, ONE]]
        return p, "U invertible"
    if cid.tag == "D":
        if rng.random() < 0.5:
            q = p["Q"]
            q[0] = [2 * x for x in q[0]]
            return p, "Q S_r Q^T = S_r"
        p["a"] = p["a"] * 2
        return p, "a^(r-2) = 1/(det(U)det(W))"
    raise InvalidId(f"no automorphism form for {cid.name}")


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    from math import isqrt

    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


# -- expected values --------------------------------------------------------------------------


@dataclass(frozen=True)
class ExpectedRow:
    cid: CatalogId
    aut_dim: int
    c11: object  # TraceInvariantValue-like tag: ("Value", scalar) | ("Indeterminate",) | ...


def expected_aut_dim(cid: CatalogId) -> int:
    n = cid.n
    if cid.tag == "Zero":
        return (n + 1) ** 2
    if cid.tag == "B":
        return n * n + n
    if cid.tag in ("C1", "C2"):
        return n * n
    if cid.tag == "C3":
        return n * n + 2
    r = cid.r
    return (n + 1 - r) * (n + 1) + r * (r - 1) // 2


def expected_c11(cid: CatalogId):
    if cid.tag == "C3":
        return ("Value", Fraction(2))
    if cid.tag == "D" and cid.r == cid.n + 1:
        return ("Value", Fraction(0))
    if cid.tag == "C2":
        a = RatFunc.var(ALPHA) if cid.alpha is None else cid.alpha
        if a == Fraction(-1, 2):
            # pole of 1/(2 alpha + 1): the exact expansion gives R = 0, L != 0
            return ("Infinity",)
        return ("Value", simplify(1 / (2 * a + 1)))
    return None


def expected_table(n: int, alphas: Sequence = ()) -> List[ExpectedRow]:
    return [ExpectedRow(c, expected_aut_dim(c), expected_c11(c)) for c in catalog_ids(n, alphas)]
