"""Exact linear algebra over any field of scalars (``Fraction`` or ``RatFunc``).

Matrices are lists of rows. Nothing here uses floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import DimensionMismatch, SingularMatrix

ZERO = Fraction(0)
ONE = Fraction(1)


def identity(k: int) -> List[List[Fraction]]:
    return [[ONE if i == j else ZERO for j in range(k)] for i in range(k)]


def transpose(m: Sequence[Sequence]) -> List[List]:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[List]:
    if a and len(a[0]) != len(b):
        raise DimensionMismatch("inner dimensions differ")
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        r = [ZERO] * cols
        for x, brow in zip(row, b):
            if x != 0:
                for j in range(cols):
                    if brow[j] != 0:
                        r[j] = r[j] + x * brow[j]
        out.append(r)
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> List:
    return [sum((x * y for x, y in zip(row, v) if x != 0 and y != 0), ZERO) for row in a]


def scale_matrix(c, m: Sequence[Sequence]) -> List[List]:
    return [[c * x for x in row] for row in m]


def det(m: Sequence[Sequence]):
    """Determinant by fraction-free Bareiss elimination."""
    k = len(m)
    if k == 0:
        return ONE
    if any(len(row) != k for row in m):
        raise DimensionMismatch("determinant of a non-square matrix")
    a = [list(row) for row in m]
    sign = 1
    prev = ONE
    for p in range(k - 1):
        pivot = next((i for i in range(p, k) if a[i][p] != 0), None)
        if pivot is None:
            return ZERO
        if pivot != p:
            a[p], a[pivot] = a[pivot], a[p]
            sign = -sign
        for i in range(p + 1, k):
            for j in range(p + 1, k):
                a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev
            a[i][p] = ZERO
        prev = a[p][p]
    d = a[k - 1][k - 1]
    return d if sign > 0 else -d


def inverse(m: Sequence[Sequence]) -> List[List]:
    """Inverse by fraction-free Gauss-Jordan on ``[M | I]``.

    Every intermediate division by the previous pivot is exact; at the end the
    left block equals ``d*I`` (``d`` = +/-det) and the right block ``d*M^-1``.
    """
    k = len(m)
    if any(len(row) != k for row in m):
        raise DimensionMismatch("inverse of a non-square matrix")
    a = [list(row) + [ONE if i == j else ZERO for j in range(k)] for i, row in enumerate(m)]
    prev = ONE
    for p in range(k):
        pivot = next((i for i in range(p, k) if a[i][p] != 0), None)
        if pivot is None:
            raise SingularMatrix("matrix is singular")
        if pivot != p:
            a[p], a[pivot] = a[pivot], a[p]
        piv = a[p][p]
        rowp = a[p]
        for i in range(k):
            if i == p:
                continue
            row = a[i]
            f = row[p]
            for j in range(2 * k):
                if j == p:
                    continue
                x = row[j] * piv
                if f != 0 and rowp[j] != 0:
                    x = x - f * rowp[j]
                row[j] = x / prev if prev != 1 else x
            row[p] = ZERO
        prev = piv
    d = prev
    return [[x / d for x in a[i][k:]] for i in range(k)]


def solve(a: Sequence[Sequence], b: Sequence) -> List:
    inv = inverse(a)
    return matvec(inv, b)


def rref(rows: Sequence[Sequence]) -> Tuple[List[List], List[int]]:
    """Reduced row echelon form and pivot columns (zero rows dropped)."""
    a = [list(r) for r in rows if any(x != 0 for x in r)]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = ONE / a[r][c]
        a[r] = [x * inv if x != 0 else ZERO for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                rowr = a[r]
                a[i] = [x - f * y if y != 0 else x for x, y in zip(a[i], rowr)]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[List]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, pivots):
            if row[f] != 0:
                v[p] = -row[f]
        basis.append(v)
    return basis


class SparseEchelon:
    """Incremental row space of sparse rows ``{column: value}``.

    Each stored row has a 1 at its pivot and is reduced against earlier pivots,
    which is all the rank and pivot-column queries need.
    """

    def __init__(self):
        self.rows: List[Dict[int, object]] = []
        self.pivots: List[int] = []
        self._pivot_set: Dict[int, int] = {}

    def reduce(self, row: Dict[int, object]) -> Dict[int, object]:
        row = {c: v for c, v in row.items() if v != 0}
        for idx, p in enumerate(self.pivots):
            f = row.get(p)
            if f is None:
                continue
            for c, v in self.rows[idx].items():
                s = row.get(c, ZERO) - f * v
                if s != 0:
                    row[c] = s
                else:
                    row.pop(c, None)
        return row

    def add(self, row: Dict[int, object]) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        p = min(row)
        inv = ONE / row[p]
        row = {c: v * inv for c, v in row.items()}
        self._pivot_set[p] = len(self.rows)
        self.rows.append(row)
        self.pivots.append(p)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def dense_rows(self, ncols: int) -> List[List]:
        return [[r.get(c, ZERO) for c in range(ncols)] for r in self.rows]


def kernel_dimension(rows: Sequence[Dict[int, object]], ncols: int) -> int:
    ech = SparseEchelon()
    for r in rows:
        ech.add(r)
    return ncols - ech.rank
