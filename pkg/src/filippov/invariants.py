"""Invariants that are monotone along degenerations.

Linear-algebra invariants (derived algebra, I-annihilators, t-centers,
(alpha)-derivations) are kernels or spans computed exactly.  Trace invariants
compare ``tr(R_X^i) tr(R_Y^j)`` with ``tr(R_X^i R_Y^j)`` as polynomials in the
coordinates of X and Y, and the scalar socle is found by a search over rational
joint eigenvalues.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .errors import InvalidT, SymbolicBlowup
from .exact import RatFunc, scalar_vars, simplify
from .exact import upoly
from .structure import NAryStructure, eval_product, full_constant, perm_sign, unit

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Subspace:
    """Row-reduced basis of a subspace of a coordinate space of dimension ``ambient``."""

    ambient: int
    basis: Tuple[Tuple, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def span(cls, ambient: int, vectors) -> "Subspace":
        rows, _ = linalg.rref([list(v) for v in vectors])
        return cls(ambient, tuple(tuple(r) for r in rows))

    @classmethod
    def kernel(cls, ambient: int, equations) -> "Subspace":
        ech = linalg.SparseEchelon()
        for row in equations:
            ech.add(row)
        null = linalg.nullspace(ech.dense_rows(ambient), ambient) if ech.rank else [
            list(unit(ambient, i)) for i in range(ambient)
        ]
        return cls.span(ambient, null)


# -- linear invariants --------------------------------------------------------------------


def derived_subspace(mu: NAryStructure) -> Subspace:
    return Subspace.span(mu.k, mu.constants.values())


def derived_dim(mu: NAryStructure) -> int:
    return linalg.rank([list(v) for v in mu.constants.values()])


def _merge(n: int, slots: Sequence[int], xs: Sequence[int], fill: Sequence[int]) -> List[int]:
    out = [None] * n
    for s, x in zip(slots, xs):
        out[s] = x
    it = iter(fill)
    for i in range(n):
        if out[i] is None:
            out[i] = next(it)
    return out


def _annihilator_equations(mu: NAryStructure, slots: Sequence[int]):
    """Rows of X -> (mu(interleave(X, e_J)))_J, X indexed by tuples of length |slots|."""
    n, k = mu.n, mu.k
    t = len(slots)
    xs_all = list(product(range(k), repeat=t))
    for fill in product(range(k), repeat=n - t):
        rows = [dict() for _ in range(k)]
        for col, xs in enumerate(xs_all):
            idx = _merge(n, slots, xs, fill)
            if len(set(idx)) < n:
                continue
            vec = full_constant(mu, idx)
            for a, c in enumerate(vec):
                if c != 0:
                    rows[a][col] = c
        for r in rows:
            if r:
                yield r


def _check_slots(mu: NAryStructure, slots) -> Tuple[int, ...]:
    slots = tuple(sorted(set(slots)))
    if not slots or slots[0] < 0 or slots[-1] >= mu.n:
        raise InvalidT(f"slot set {slots} must be a nonempty subset of 0..{mu.n - 1}")
    return slots


def annihilator_I(mu: NAryStructure, slots: Sequence[int]) -> Subspace:
    """Tensors X in V^(x)t killing every product whose ``slots`` carry X (0-based slots)."""
    slots = _check_slots(mu, slots)
    return Subspace.kernel(mu.k ** len(slots), _annihilator_equations(mu, slots))


def annihilator_dim(mu: NAryStructure, slots: Sequence[int]) -> int:
    slots = _check_slots(mu, slots)
    return mu.k ** len(slots) - _rank_of(_annihilator_equations(mu, slots))


def annihilator(mu: NAryStructure) -> Subspace:
    """Intersection of the singleton-slot annihilators."""

    def eqs():
        for s in range(mu.n):
            yield from _annihilator_equations(mu, (s,))

    return Subspace.kernel(mu.k, eqs())


def _rank_of(rows) -> int:
    ech = linalg.SparseEchelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def shuffles(n: int, t: int) -> List[Tuple[int, ...]]:
    """(t, n-t)-shuffles as sequences s with s[:t] and s[t:] increasing."""
    out = []
    for first in combinations(range(n), t):
        rest = [i for i in range(n) if i not in first]
        out.append(tuple(first) + tuple(rest))
    return out


def _center_equations(mu: NAryStructure, t: int):
    n, k = mu.n, mu.k
    xs_all = list(product(range(k), repeat=t))
    shs = [s for s in shuffles(n, t) if s != tuple(range(n))]
    for fill in product(range(k), repeat=n - t):
        for s in shs:
            rows = [dict() for _ in range(k)]
            for col, xs in enumerate(xs_all):
                orig = list(xs) + list(fill)
                perm = [orig[s[i]] for i in range(n)]
                a_vec = full_constant(mu, perm)
                b_vec = full_constant(mu, orig)
                for a in range(k):
                    d = a_vec[a] - b_vec[a]
                    if d != 0:
                        rows[a][col] = d
            for r in rows:
                if r:
                    yield r


def _check_t(mu: NAryStructure, t: int):
    if not 1 <= t <= mu.n - 1:
        raise InvalidT(f"t-center needs 1 <= t <= n-1, got t={t}, n={mu.n}")


def t_center(mu: NAryStructure, t: int) -> Subspace:
    """X in V^(x)t with mu(sigma(X (x) e_J)) = mu(X (x) e_J) for every shuffle sigma and filling J."""
    _check_t(mu, t)
    return Subspace.kernel(mu.k ** t, _center_equations(mu, t))


def t_center_dim(mu: NAryStructure, t: int) -> int:
    _check_t(mu, t)
    return mu.k ** t - _rank_of(_center_equations(mu, t))


def _alpha_equations(mu: NAryStructure, weights: Sequence):
    """Rows in the unknowns D[a][b] (column a*k + b), with D e_b = sum_a D[a][b] e_a."""
    n, k = mu.n, mu.k
    if len(weights) != n + 1:
        raise ValueError(f"weight vector must have length n+1 = {n + 1}")
    w = [Fraction(x) for x in weights]
    symmetric = all(x == w[1] for x in w[1:])
    tuples = combinations(range(k), n) if symmetric else product(range(k), repeat=n)
    for x in tuples:
        rows = [dict() for _ in range(k)]
        lhs = full_constant(mu, x)
        if w[0] != 0:
            for j, c in enumerate(lhs):
                if c != 0:
                    for a in range(k):
                        col = a * k + j
                        rows[a][col] = rows[a].get(col, ZERO) + w[0] * c
        for i in range(n):
            if w[i + 1] == 0:
                continue
            for b in range(k):
                y = list(x)
                y[i] = b
                vec = full_constant(mu, y)
                col = b * k + x[i]
                for a, c in enumerate(vec):
                    if c != 0:
                        rows[a][col] = rows[a].get(col, ZERO) - w[i + 1] * c
        for r in rows:
            r = {c: v for c, v in r.items() if v != 0}
            if r:
                yield r


def alpha_derivations(mu: NAryStructure, weights: Sequence) -> Subspace:
    """Maps D with w0 D[x1..xn] = sum_i w_i [x1..D xi..xn], flattened row-major."""
    return Subspace.kernel(mu.k * mu.k, _alpha_equations(mu, weights))


def alpha_derivations_dim(mu: NAryStructure, weights: Sequence) -> int:
    return mu.k * mu.k - _rank_of(_alpha_equations(mu, weights))


def aut_dim(mu: NAryStructure) -> int:
    """Dimension of the automorphism group, equal to the dimension of the derivation algebra."""
    return alpha_derivations_dim(mu, [1] * (mu.n + 1))


# -- right multiplications ------------------------------------------------------------------


def right_mult(mu: NAryStructure, x: Sequence[Sequence]) -> List[List]:
    """Matrix of Z -> mu(Z, X1, ..., X_{n-1}); column b is the image of e_b."""
    if len(x) != mu.n - 1:
        raise ValueError(f"fundamental object needs {mu.n - 1} components")
    k = mu.k
    cols = [eval_product(mu, [unit(k, b), *x]) for b in range(k)]
    return [[cols[b][a] for b in range(k)] for a in range(k)]


def basis_right_mult(mu: NAryStructure, idx: Sequence[int]) -> Dict[Tuple[int, int], object]:
    """Sparse R_X for X = (e_i for i in idx): {(row, col): value}."""
    out = {}
    for b in range(mu.k):
        vec = full_constant(mu, [b, *idx])
        for a, c in enumerate(vec):
            if c != 0:
                out[(a, b)] = c
    return out


def basis_operators(mu: NAryStructure) -> List[Tuple[Tuple[int, ...], List[List]]]:
    """Dense R_X for every increasing (n-1)-tuple of basis vectors with R_X != 0."""
    out = []
    for idx in combinations(range(mu.k), mu.n - 1):
        sp = basis_right_mult(mu, idx)
        if sp:
            m = [[ZERO] * mu.k for _ in range(mu.k)]
            for (a, b), c in sp.items():
                m[a][b] = c
            out.append((idx, m))
    return out


# -- trace invariants -------------------------------------------------------------------------


@dataclass(frozen=True)
class TraceInvariantValue:
    tag: str  # Value | Infinity | Indeterminate | None
    value: object = None
    probabilistic: bool = False

    def __post_init__(self):
        if self.tag not in ("Value", "Infinity", "Indeterminate", "None"):
            raise ValueError(f"unknown tag {self.tag!r}")

    def is_parameter_free(self) -> bool:
        return self.tag != "Value" or not scalar_vars(self.value)

    def __str__(self):
        s = self.tag if self.tag != "Value" else f"Value({simplify(self.value)})"
        return s + (" [probabilistic]" if self.probabilistic else "")


def _power_expansion(mu: NAryStructure, i: int, budget: int) -> Dict[tuple, Dict[Tuple[int, int], object]]:
    """R_X^i as {monomial: sparse matrix}.

    A monomial is recorded per slot p of X as the sorted tuple of basis
    coordinates of X_p it uses, so x_{p,c} variables for different slots never mix.
    """
    n, k = mu.n, mu.k
    base = []
    cache = {}
    for c in product(range(k), repeat=n - 1):
        if len(set(c)) < n - 1:
            continue
        key = tuple(sorted(c))
        if key not in cache:
            cache[key] = basis_right_mult(mu, key)
        m = cache[key]
        if not m:
            continue
        s = perm_sign(c)
        base.append((c, m if s > 0 else {ab: -v for ab, v in m.items()}))
    cur: Dict[tuple, Dict[Tuple[int, int], object]] = {}
    for c, m in base:
        key = tuple((x,) for x in c)
        _accumulate(cur, key, m)
    for _ in range(i - 1):
        nxt: Dict[tuple, Dict[Tuple[int, int], object]] = {}
        terms = 0
        for key, p in cur.items():
            for c, m in base:
                prod_m = _sparse_mul(p, m)
                if not prod_m:
                    continue
                nkey = tuple(tuple(sorted(ks + (x,))) for ks, x in zip(key, c))
                terms += _accumulate(nxt, nkey, prod_m)
                if terms > budget:
                    raise SymbolicBlowup(terms, budget)
        cur = {key: m for key, m in nxt.items() if m}
    total = sum(len(m) for m in cur.values())
    if total > budget:
        raise SymbolicBlowup(total, budget)
    return cur


def _accumulate(acc, key, m) -> int:
    tgt = acc.get(key)
    if tgt is None:
        acc[key] = dict(m)
        return len(m)
    before = len(tgt)
    for ab, v in m.items():
        s = tgt.get(ab, ZERO) + v
        if s != 0:
            tgt[ab] = s
        else:
            tgt.pop(ab, None)
    return max(len(tgt) - before, 0)


def _sparse_mul(p, m):
    by_row: Dict[int, List[Tuple[int, object]]] = {}
    for (a, b), v in m.items():
        by_row.setdefault(a, []).append((b, v))
    out = {}
    for (a, b), v in p.items():
        for c, w in by_row.get(b, ()):
            s = out.get((a, c), ZERO) + v * w
            if s != 0:
                out[(a, c)] = s
            else:
                out.pop((a, c), None)
    return out


def _coefficient_span(mu: NAryStructure, i: int, budget: int) -> List[List[List]]:
    """Basis (as k x k matrices) of the span of the coefficient matrices of R_X^i."""
    k = mu.k
    ech = linalg.SparseEchelon()
    for m in _power_expansion(mu, i, budget).values():
        ech.add({a * k + b: v for (a, b), v in m.items()})
        if ech.rank == k * k:
            break
    return [[[row.get(a * k + b, ZERO) for b in range(k)] for a in range(k)] for row in ech.rows]


def _trace(m) -> object:
    return sum((m[a][a] for a in range(len(m))), ZERO)


def _trace_of_product(a, b) -> object:
    k = len(a)
    return sum((a[p][q] * b[q][p] for p in range(k) for q in range(k) if a[p][q] != 0 and b[q][p] != 0), ZERO)


def classify_proportionality(left, right) -> TraceInvariantValue:
    """Tag for ``left = c * right`` where both are equally shaped coefficient arrays."""
    left = [simplify(x) for x in left]
    right = [simplify(x) for x in right]
    lz = all(x == 0 for x in left)
    rz = all(x == 0 for x in right)
    if lz and rz:
        return TraceInvariantValue("Indeterminate")
    if rz:
        return TraceInvariantValue("Infinity")
    pos = next(p for p, x in enumerate(right) if x != 0)
    c = simplify(left[pos] / right[pos])
    if all(simplify(l - c * r) == 0 for l, r in zip(left, right)):
        return TraceInvariantValue("Value", c)
    return TraceInvariantValue("None")


def trace_invariant(mu: NAryStructure, i: int, j: int, term_budget: int = 10**6) -> TraceInvariantValue:
    """Exact c_{i,j}: compare tr(R_X^i) tr(R_Y^j) with tr(R_X^i R_Y^j) as polynomials in X, Y.

    R_X^i = sum_m u_m(X) P_m with independent monomials u_m; writing the P_m in
    terms of a basis C_1..C_r of their span, both sides become u^T K^T G K v with
    K of full row rank, so proportionality reduces to the small r x s matrices
    G_L[p][q] = tr(C_p) tr(C'_q) and G_R[p][q] = tr(C_p C'_q).
    """
    if i < 1 or j < 1:
        raise ValueError("exponents must be positive")
    cu = _coefficient_span(mu, i, term_budget)
    cv = cu if i == j else _coefficient_span(mu, j, term_budget)
    tu = [_trace(m) for m in cu]
    tv = [_trace(m) for m in cv]
    gl = [x * y for x in tu for y in tv]
    gr = [_trace_of_product(a, b) for a in cu for b in cv]
    return classify_proportionality(gl, gr)


def _random_rational(rng: random.Random, bound: int = 2**16) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def trace_invariant_randomized(mu: NAryStructure, i: int, j: int, seed: int = 0, points: int = 32) -> TraceInvariantValue:
    """Evaluate both sides at random rational X, Y and test proportionality (flagged probabilistic)."""
    rng = random.Random(seed)
    k = mu.k
    left, right = [], []
    for _ in range(points):
        x = [[_random_rational(rng) for _ in range(k)] for _ in range(mu.n - 1)]
        y = [[_random_rational(rng) for _ in range(k)] for _ in range(mu.n - 1)]
        rx = _mat_power(right_mult(mu, x), i)
        ry = _mat_power(right_mult(mu, y), j)
        left.append(_trace(rx) * _trace(ry))
        right.append(_trace_of_product(rx, ry))
    v = classify_proportionality(left, right)
    return TraceInvariantValue(v.tag, v.value, probabilistic=True)


def _mat_power(m, e):
    out = m
    for _ in range(e - 1):
        out = linalg.matmul(out, m)
    return out


# -- scalar socle ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Unavailable:
    reason: str

    def __str__(self):
        return f"Unavailable({self.reason})"


def _span_closure(gens: Sequence[List[List]], start: Sequence[List[List]], k: int, two_sided: bool):
    """Basis of the smallest subspace containing ``start`` and closed under multiplication by ``gens``."""
    ech = linalg.SparseEchelon()
    basis = []
    queue = []

    def push(m):
        row = {a * k + b: m[a][b] for a in range(k) for b in range(k) if m[a][b] != 0}
        if ech.add(row):
            basis.append(m)
            queue.append(m)

    for m in start:
        push(m)
    while queue:
        m = queue.pop()
        for g in gens:
            push(linalg.matmul(g, m))
            if two_sided:
                push(linalg.matmul(m, g))
    return basis


def commutator_kernel(mu: NAryStructure) -> Subspace:
    """Common kernel of the two-sided ideal generated by commutators of the basis right multiplications.

    Any subspace on which every R_X acts as a scalar lies in this kernel, and
    the operators commute on it.
    """
    k = mu.k
    gens = [m for _, m in basis_operators(mu)]
    comms = []
    for a, b in combinations(gens, 2):
        c = linalg.matmul(a, b)
        d = linalg.matmul(b, a)
        diff = [[simplify(c[p][q] - d[p][q]) for q in range(k)] for p in range(k)]
        if any(x != 0 for row in diff for x in row):
            comms.append(diff)
    ideal = _span_closure(gens, comms, k, two_sided=True)
    eqs = []
    for m in ideal:
        for row in m:
            r = {c: v for c, v in enumerate(row) if v != 0}
            if r:
                eqs.append(r)
    return Subspace.kernel(k, eqs)


def _restrict(op: List[List], sub: Subspace) -> List[List]:
    """Matrix of ``op`` on an invariant subspace, in the coordinates of its rref basis."""
    basis = sub.basis
    pivots = [next(i for i, x in enumerate(row) if x != 0) for row in basis]
    images = [linalg.matvec(op, row) for row in basis]
    return [[images[c][p] for c in range(len(basis))] for p in pivots]


def _lift(vectors, sub: Subspace, ambient: int):
    out = []
    for v in vectors:
        w = [ZERO] * ambient
        for c, row in zip(v, sub.basis):
            if c != 0:
                for i, x in enumerate(row):
                    if x != 0:
                        w[i] = w[i] + c * x
        out.append(w)
    return out


def _candidate_roots(cp: List, seed: int) -> List:
    """Roots of ``cp`` in the constant field Q.

    With rational coefficients these are found by the rational root test.  With
    coefficients in Q(params) the parameters are specialized at a random point,
    and each rational root found there is kept only if it is an exact root of ``cp``.
    """
    cp = [simplify(c) for c in cp]
    names = sorted({v for c in cp for v in scalar_vars(c)})
    if not names:
        return upoly.rational_roots(cp)
    rng = random.Random(seed)
    for _ in range(8):
        point = {v: Fraction(rng.randint(-997, 997), rng.randint(1, 97)) for v in names}
        try:
            at_point = [c.evaluate(point) if isinstance(c, RatFunc) else c for c in cp]
        except ZeroDivisionError:
            continue
        if at_point[-1] == 0:
            continue
        return [r for r in upoly.rational_roots(at_point) if simplify(upoly.evaluate(cp, r)) == 0]
    return []


def _eigen_search(ops: List[List[List]], sub: Subspace, k: int, seed: int) -> Tuple[int, int]:
    """(best dimension found, largest multiplicity of an unresolved non-rational eigenvalue)."""
    if sub.dim == 0:
        return 0, 0
    if not ops:
        return sub.dim, 0
    op, rest = ops[0], ops[1:]
    m = _restrict(op, sub)
    d = sub.dim
    if all(x == 0 for row in m for x in row):
        return _eigen_search(rest, sub, k, seed)
    cp = upoly.char_poly(m)
    best, unresolved = 0, 0
    for factor, mult in upoly.squarefree(cp):
        roots = _candidate_roots(factor, seed)
        for lam in roots:
            shifted = [[m[p][q] - (lam if p == q else ZERO) for q in range(d)] for p in range(d)]
            null = linalg.nullspace(shifted, d)
            eig = Subspace.span(k, _lift(null, sub, k))
            b, u = _eigen_search(rest, eig, k, seed)
            best, unresolved = max(best, b), max(unresolved, u)
        if len(factor) - 1 > len(roots):
            unresolved = max(unresolved, mult)
    return best, unresolved


def socle_dim(mu: NAryStructure, seed: int = 0):
    """Largest W with every basis R_X acting on W as a scalar, or ``Unavailable``."""
    k = mu.k
    ops = [m for _, m in basis_operators(mu)]
    kern = commutator_kernel(mu)
    best, unresolved = _eigen_search(ops, kern, k, seed)
    if unresolved > best:
        return Unavailable("IrrationalSpectrum")
    return best


# -- profiles -----------------------------------------------------------------------------------


@dataclass(frozen=True)
class ProfileConfig:
    """Which invariants a profile computes.  Slot sets are 0-based."""

    slot_sets: Tuple[Tuple[int, ...], ...] = ((0,), (0, 1))
    centers: Tuple[int, ...] = (1, 2)
    weights: Optional[Tuple[Tuple, ...]] = None  # None: the four default weight vectors
    pairs: Tuple[Tuple[int, int], ...] = ((1, 1), (1, 2), (2, 2))
    term_budget: int = 10**6
    seed: int = 0
    socle: bool = True

    def weights_for(self, n: int) -> Tuple[Tuple[Fraction, ...], ...]:
        if self.weights is not None:
            return tuple(tuple(Fraction(x) for x in w) for w in self.weights)
        one = (ONE,) * n
        return ((ONE,) + one, (ZERO,) + one, (ONE,) + (ZERO,) * n, (Fraction(2),) + one)

    def slot_sets_for(self, n: int):
        return tuple(s for s in self.slot_sets if max(s) < n)

    def centers_for(self, n: int):
        return tuple(t for t in self.centers if 1 <= t <= n - 1)


@dataclass
class InvariantProfile:
    n: int
    k: int
    dim_derived: int
    dim_ann: int
    dim_ann_I: Dict[Tuple[int, ...], int]
    dim_center_t: Dict[int, int]
    dim_der_alpha: Dict[Tuple[Fraction, ...], int]
    c_invariants: Dict[Tuple[int, int], object]
    socle_dim: object
    aut_dim: int
    params: Tuple[str, ...] = ()
    errors: Dict[str, str] = field(default_factory=dict)

    def comparable(self) -> tuple:
        """Everything that must agree between isomorphic algebras."""
        return (
            self.dim_derived,
            self.dim_ann,
            tuple(sorted(self.dim_ann_I.items())),
            tuple(sorted(self.dim_center_t.items())),
            tuple(sorted(self.dim_der_alpha.items())),
            tuple(sorted((p, _cmp_key(v)) for p, v in self.c_invariants.items())),
            str(self.socle_dim),
            self.aut_dim,
        )


def _cmp_key(v):
    if isinstance(v, TraceInvariantValue):
        return (v.tag, str(simplify(v.value)) if v.tag == "Value" else "", v.probabilistic)
    return (str(v),)


def profile(mu: NAryStructure, config: Optional[ProfileConfig] = None) -> InvariantProfile:
    cfg = config or ProfileConfig()
    n, k = mu.n, mu.k
    errors = {}
    c_inv = {}
    for (i, j) in cfg.pairs:
        try:
            c_inv[(i, j)] = trace_invariant(mu, i, j, cfg.term_budget)
        except SymbolicBlowup as e:
            errors[f"c_{i}_{j}"] = str(e)
            c_inv[(i, j)] = trace_invariant_randomized(mu, i, j, cfg.seed)
    soc = socle_dim(mu, cfg.seed) if cfg.socle else Unavailable("NotComputed")
    return InvariantProfile(
        n=n,
        k=k,
        dim_derived=derived_dim(mu),
        dim_ann=annihilator(mu).dim,
        dim_ann_I={s: annihilator_dim(mu, s) for s in cfg.slot_sets_for(n)},
        dim_center_t={t: t_center_dim(mu, t) for t in cfg.centers_for(n)},
        dim_der_alpha={w: alpha_derivations_dim(mu, w) for w in cfg.weights_for(n)},
        c_invariants=c_inv,
        socle_dim=soc,
        aut_dim=aut_dim(mu),
        params=mu.params,
        errors=errors,
    )
