"""Alternating n-ary algebra structures stored by structure constants.

Indices are 0-based throughout the Python API; the JSON formats and the CLI
use 1-based indices, converted in :mod:`filippov.io`.

Basis-change convention (used by :func:`change_of_basis`): the rows of ``A``
are the new basis vectors written in old coordinates, ``E_i = sum_j A[i][j] e_j``.
For example on ``C1`` (n = 3), ``A = diag(t, 1, t, 1)`` gives
``[E_1, E_3, E_4] = [t e_1, t e_3, e_4] = t^2 e_2 = t^2 E_2``.
Consequently ``change_of_basis(change_of_basis(mu, A), B) == change_of_basis(mu, B @ A)``.

Matrices of linear maps (automorphisms, derivations) use the column
convention: column ``j`` holds the image of ``e_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from . import linalg
from .errors import (
    DimensionMismatch,
    InconsistentAutomorphismCheck,
    IndexOutOfRange,
    SingularMatrix,
    WrongDimension,
)
from .exact import scalar_vars, simplify

ZERO = Fraction(0)
ONE = Fraction(1)

Vector = Tuple  # length-k tuple of scalars


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (0 if an entry repeats)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def unit(k: int, i: int) -> Tuple:
    return tuple(ONE if j == i else ZERO for j in range(k))


def zero_vector(k: int) -> Tuple:
    return (ZERO,) * k


@dataclass(frozen=True, eq=False)
class NAryStructure:
    """Alternating n-linear product on a k-dimensional space.

    ``constants`` maps strictly increasing index tuples to coefficient vectors;
    absent tuples are zero products.
    """

    n: int
    k: int
    constants: Mapping[Tuple[int, ...], Tuple] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("arity must be at least 2")
        if self.k < 1:
            raise ValueError("dimension must be at least 1")
        clean = {}
        for idx, vec in self.constants.items():
            idx = tuple(idx)
            if len(idx) != self.n or any(b <= a for a, b in zip(idx, idx[1:])):
                raise ValueError(f"index tuple {idx} is not strictly increasing of length {self.n}")
            if idx[0] < 0 or idx[-1] >= self.k:
                raise IndexOutOfRange(f"index tuple {idx} outside 0..{self.k - 1}")
            if len(vec) != self.k:
                raise DimensionMismatch(f"coefficient vector for {idx} has length {len(vec)}")
            vec = tuple(simplify(c) for c in vec)
            if any(c != 0 for c in vec):
                clean[idx] = vec
        object.__setattr__(self, "constants", clean)

    def __eq__(self, other):
        if not isinstance(other, NAryStructure):
            return NotImplemented
        return self.n == other.n and self.k == other.k and self.constants == other.constants

    __hash__ = None

    @property
    def params(self) -> Tuple[str, ...]:
        names = set()
        for vec in self.constants.values():
            for c in vec:
                names.update(scalar_vars(c))
        return tuple(sorted(names))

    def is_zero(self) -> bool:
        return not self.constants

    def with_name(self, name: str) -> "NAryStructure":
        return NAryStructure(self.n, self.k, self.constants, name)

    def map_scalars(self, fn) -> "NAryStructure":
        return NAryStructure(
            self.n, self.k, {i: tuple(fn(c) for c in v) for i, v in self.constants.items()}, self.name
        )

    def subs(self, mapping: Mapping[str, object]) -> "NAryStructure":
        """Substitute parameters by scalars (or functions of ``t``)."""
        return self.map_scalars(lambda c: c.subs(mapping) if hasattr(c, "subs") else c)

    def __repr__(self):
        label = self.name or "NAryStructure"
        return f"<{label} n={self.n} k={self.k} products={len(self.constants)}>"


def zero_algebra(n: int, k: int) -> NAryStructure:
    return NAryStructure(n, k, {}, "0")


# -- products -----------------------------------------------------------------------


def full_constant(mu: NAryStructure, indices: Sequence[int]) -> Tuple:
    """Product of basis vectors in any order, using antisymmetry."""
    if len(indices) != mu.n:
        raise DimensionMismatch(f"expected {mu.n} indices, got {len(indices)}")
    if any(i < 0 or i >= mu.k for i in indices):
        raise IndexOutOfRange(f"indices {tuple(indices)} outside 0..{mu.k - 1}")
    s = perm_sign(indices)
    if s == 0:
        return zero_vector(mu.k)
    vec = mu.constants.get(tuple(sorted(indices)))
    if vec is None:
        return zero_vector(mu.k)
    return vec if s > 0 else tuple(-c for c in vec)


def eval_product(mu: NAryStructure, args: Sequence[Sequence]) -> Tuple:
    """n-linear alternating extension: sum over stored tuples of minor * constant."""
    if len(args) != mu.n:
        raise DimensionMismatch(f"expected {mu.n} arguments, got {len(args)}")
    if any(len(a) != mu.k for a in args):
        raise DimensionMismatch("argument length does not match the dimension")
    out = [ZERO] * mu.k
    for idx, vec in mu.constants.items():
        minor = [[a[i] for i in idx] for a in args]
        d = _small_det(minor)
        if d != 0:
            for j, c in enumerate(vec):
                if c != 0:
                    out[j] = out[j] + d * c
    return tuple(simplify(x) for x in out)


def _small_det(m):
    if len(m) == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if all(sum(1 for x in row if x != 0) <= 1 for row in m):
        # monomial-pattern rows: the determinant picks at most one permutation
        cols = []
        val = ONE
        for row in m:
            j = next((j for j, x in enumerate(row) if x != 0), None)
            if j is None:
                return ZERO
            cols.append(j)
            val = val * row[j]
        s = perm_sign(cols)
        return val * s if s else ZERO
    return linalg.det(m)


def product_with_basis(mu: NAryStructure, vec: Sequence, basis_idx: Sequence[int], slot: int = 0) -> Tuple:
    """``mu`` applied to basis vectors with ``vec`` inserted at ``slot``; linear in ``vec``."""
    out = [ZERO] * mu.k
    for j, c in enumerate(vec):
        if c == 0:
            continue
        idx = list(basis_idx)
        idx.insert(slot, j)
        v = full_constant(mu, idx)
        for a, x in enumerate(v):
            if x != 0:
                out[a] = out[a] + c * x
    return tuple(out)


# -- basis change -------------------------------------------------------------------


def change_of_basis(mu: NAryStructure, a: Sequence[Sequence]) -> NAryStructure:
    """Structure constants of ``mu`` in the basis whose vectors are the rows of ``a``."""
    k = mu.k
    if len(a) != k or any(len(r) != k for r in a):
        raise DimensionMismatch(f"basis matrix must be {k}x{k}")
    try:
        inv = linalg.inverse(a)
    except SingularMatrix:
        raise SingularMatrix("basis matrix is singular") from None
    # coordinates d solve A^T d = v, i.e. d = (A^{-1})^T v
    inv_t = linalg.transpose(inv)
    rows = [tuple(r) for r in a]
    out = {}
    for idx in combinations(range(k), mu.n):
        v = eval_product(mu, [rows[i] for i in idx])
        if all(x == 0 for x in v):
            continue
        d = linalg.matvec(inv_t, v)
        out[idx] = tuple(simplify(x) for x in d)
    return NAryStructure(mu.n, k, out, mu.name)


# -- Filippov identity ----------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    x: Tuple[int, ...]
    y: Tuple[int, ...]
    residual: Tuple


def filippov_residual(mu: NAryStructure, x: Sequence[int], y: Sequence[int]) -> Tuple:
    """LHS - RHS of the fundamental identity on basis vectors ``e_x`` and ``e_y``."""
    k = mu.k
    inner = full_constant(mu, x)
    lhs = product_with_basis(mu, inner, y, 0)
    rhs = [ZERO] * k
    for i in range(mu.n):
        dy = full_constant(mu, [x[i], *y])
        rest = list(x[:i]) + list(x[i + 1:])
        term = product_with_basis(mu, dy, rest, i)
        for a, v in enumerate(term):
            if v != 0:
                rhs[a] = rhs[a] + v
    return tuple(simplify(l - r) for l, r in zip(lhs, rhs))


def check_filippov(mu: NAryStructure) -> List[Violation]:
    """All violated tuples of the fundamental identity; empty means the check passed.

    Both sides are alternating in the x's and in the y's, so increasing tuples suffice.
    """
    bad = []
    for x in combinations(range(mu.k), mu.n):
        for y in combinations(range(mu.k), mu.n - 1):
            r = filippov_residual(mu, x, y)
            if any(c != 0 for c in r):
                bad.append(Violation(x, y, r))
    return bad


def is_filippov(mu: NAryStructure) -> bool:
    return not check_filippov(mu)


# -- R-matrix and automorphisms -------------------------------------------------------------


def rmatrix(mu: NAryStructure) -> List[List]:
    """Row i holds (-1)^i times the product of all basis vectors except e_i."""
    if mu.k != mu.n + 1:
        raise WrongDimension(f"R-matrix needs k = n + 1, got k={mu.k}, n={mu.n}")
    out = []
    for i in range(mu.k):
        idx = tuple(j for j in range(mu.k) if j != i)
        vec = mu.constants.get(idx, zero_vector(mu.k))
        out.append([c if i % 2 == 0 else -c for c in vec])
    return out


def apply_map(s: Sequence[Sequence], v: Sequence) -> Tuple:
    return tuple(linalg.matvec(s, v))


def is_automorphism_by_definition(mu: NAryStructure, s: Sequence[Sequence]) -> bool:
    k = mu.k
    images = [tuple(s[i][j] for i in range(k)) for j in range(k)]
    for idx in combinations(range(k), mu.n):
        lhs = apply_map(s, full_constant(mu, idx))
        rhs = eval_product(mu, [images[i] for i in idx])
        if any(simplify(a - b) != 0 for a, b in zip(lhs, rhs)):
            return False
    return True


def is_automorphism_by_rmatrix(mu: NAryStructure, s: Sequence[Sequence]) -> bool:
    r = rmatrix(mu)
    d = linalg.det(s)
    lhs = linalg.matmul(linalg.matmul(s, r), linalg.transpose(s))
    return all(simplify(lhs[i][j] / d - r[i][j]) == 0 for i in range(mu.k) for j in range(mu.k))


def is_automorphism(mu: NAryStructure, s: Sequence[Sequence]) -> bool:
    """Definition check on all basis tuples, cross-checked by the R-matrix test when k = n+1."""
    k = mu.k
    if len(s) != k or any(len(r) != k for r in s):
        raise DimensionMismatch(f"map matrix must be {k}x{k}")
    if linalg.det(s) == 0:
        raise SingularMatrix("automorphism candidate is singular")
    by_def = is_automorphism_by_definition(mu, s)
    if k == mu.n + 1:
        by_r = is_automorphism_by_rmatrix(mu, s)
        if by_r != by_def:
            raise InconsistentAutomorphismCheck(
                f"definition check gave {by_def}, R-matrix check gave {by_r}"
            )
    return by_def


# -- helpers used by the invariants ----------------------------------------------------------


def all_tuples(k: int, length: int) -> Iterator[Tuple[int, ...]]:
    return product(range(k), repeat=length)


def signed_orderings(idx: Sequence[int]) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    """Every ordering of ``idx`` with the sign relative to the sorted order."""
    for p in permutations(idx):
        yield perm_sign(p), p
