"""Independent dense reference implementations built on sympy.

Nothing here imports the package's linear algebra or invariant code: the
structure is expanded into a full k^n tensor and every quantity is computed
by direct enumeration.
"""

import itertools

import sympy
from sympy.combinatorics import Permutation

ALPHA = sympy.Symbol("alpha")


def scalar(x):
    return sympy.sympify(str(x).replace("^", "**"), locals={"alpha": ALPHA, "t": sympy.Symbol("t")})


def dense_tensor(mu):
    """Map every n-tuple of 0-based indices to a sympy column vector."""
    k, n = mu.k, mu.n
    stored = {idx: sympy.Matrix([scalar(c) for c in vec]) for idx, vec in mu.constants.items()}
    zero = sympy.zeros(k, 1)
    out = {}
    for tup in itertools.product(range(k), repeat=n):
        if len(set(tup)) < n:
            out[tup] = zero
            continue
        order = sorted(range(n), key=lambda i: tup[i])
        sign = Permutation(order).signature()
        base = stored.get(tuple(sorted(tup)), zero)
        out[tup] = sign * base
    return out


def product(tensor, vecs, k):
    """Multilinear product of sympy vectors (lists of length k)."""
    acc = sympy.zeros(k, 1)
    supports = [[i for i in range(k) if v[i] != 0] for v in vecs]
    for tup in itertools.product(*supports):
        coeff = sympy.Integer(1)
        for v, i in zip(vecs, tup):
            coeff *= v[i]
        acc += coeff * tensor[tup]
    return acc


def basis_vec(k, i):
    return [sympy.Integer(1) if j == i else sympy.Integer(0) for j in range(k)]


def filippov_violations(mu):
    """Set of (x, y) basis index tuples on which the fundamental identity fails (all orderings)."""
    k, n = mu.k, mu.n
    ten = dense_tensor(mu)
    e = [basis_vec(k, i) for i in range(k)]
    bad = set()
    for x in itertools.product(range(k), repeat=n):
        inner = list(ten[x])
        for y in itertools.product(range(k), repeat=n - 1):
            lhs = product(ten, [inner] + [e[j] for j in y], k)
            rhs = sympy.zeros(k, 1)
            for i in range(n):
                dy = list(ten[(x[i],) + y])
                args = [e[j] for j in x]
                args[i] = dy
                rhs += product(ten, args, k)
            if any(sympy.simplify(c) != 0 for c in lhs - rhs):
                bad.add((x, y))
    return bad


def _nullity(rows, ncols):
    if not rows:
        return ncols
    m = sympy.Matrix(rows)
    return ncols - m.rank(simplify=True)


def derived_dim(mu):
    ten = dense_tensor(mu)
    cols = [list(v) for v in ten.values()]
    return sympy.Matrix(cols).rank() if cols else 0


def ann_I_dim(mu, slots):
    """Kernel of X -> mu(X in the given slots, basis vectors elsewhere)."""
    k, n = mu.k, mu.n
    ten = dense_tensor(mu)
    slots = list(slots)
    rest = [s for s in range(n) if s not in slots]
    xs = list(itertools.product(range(k), repeat=len(slots)))
    rows = []
    for fill in itertools.product(range(k), repeat=len(rest)):
        for out in range(k):
            row = []
            for x in xs:
                tup = [None] * n
                for s, i in zip(slots, x):
                    tup[s] = i
                for s, i in zip(rest, fill):
                    tup[s] = i
                row.append(ten[tuple(tup)][out])
            rows.append(row)
    return _nullity(rows, len(xs))


def annihilator_dim(mu):
    """Intersection of the single-slot annihilators, as one stacked kernel."""
    k, n = mu.k, mu.n
    ten = dense_tensor(mu)
    rows = []
    for slot in range(n):
        for fill in itertools.product(range(k), repeat=n - 1):
            for out in range(k):
                row = []
                for x in range(k):
                    tup = list(fill)
                    tup.insert(slot, x)
                    row.append(ten[tuple(tup)][out])
                rows.append(row)
    return _nullity(rows, k)


def shuffles(n, t):
    """Permutations s of range(n) with s[0] < ... < s[t-1] and s[t] < ... < s[n-1]."""
    out = []
    for first in itertools.combinations(range(n), t):
        second = [i for i in range(n) if i not in first]
        out.append(tuple(first) + tuple(second))
    return out


def t_center_dim(mu, t):
    """X in V^{(x)t} with mu(X placed by a shuffle, e_J) = mu(X, e_J) for all shuffles and fillings."""
    k, n = mu.k, mu.n
    ten = dense_tensor(mu)
    xs = list(itertools.product(range(k), repeat=t))
    rows = []
    for sigma in shuffles(n, t):
        for fill in itertools.product(range(k), repeat=n - t):
            for out in range(k):
                row = []
                for x in xs:
                    factors = list(x) + list(fill)
                    moved = [None] * n
                    for pos, f in zip(sigma, factors):
                        moved[pos] = f
                    row.append(ten[tuple(moved)][out] - ten[tuple(factors)][out])
                rows.append(row)
    return _nullity(rows, len(xs))


def alpha_derivations_dim(mu, weights):
    """Unknown D with column b the image of e_b; every ordered basis tuple gives k equations."""
    k, n = mu.k, mu.n
    ten = dense_tensor(mu)
    w = [sympy.Rational(str(x)) for x in weights]
    rows = []
    for tup in itertools.product(range(k), repeat=n):
        for out in range(k):
            row = [sympy.Integer(0)] * (k * k)
            # alpha_0 D mu(e_tup): coefficient of D[out][b] is mu(e_tup)[b]
            v = ten[tup]
            for b in range(k):
                row[out * k + b] += w[0] * v[b]
            # - sum_m alpha_m mu(..., D e_{tup[m]}, ...): D e_j = sum_a D[a][j] e_a
            for m in range(n):
                for a in range(k):
                    moved = list(tup)
                    moved[m] = a
                    row[a * k + tup[m]] -= w[m + 1] * ten[tuple(moved)][out]
            rows.append(row)
    return _nullity(rows, k * k)


def aut_dim(mu):
    return alpha_derivations_dim(mu, [1] * (mu.n + 1))


def right_mult_symbolic(mu, xs):
    """Matrix of z -> mu(z, xs[0], ..., xs[-1]) for sympy vectors xs."""
    k = mu.k
    ten = dense_tensor(mu)
    cols = [product(ten, [basis_vec(k, z)] + list(xs), k) for z in range(k)]
    return sympy.Matrix.hstack(*cols)


def trace_invariant(mu, i, j):
    """(tag, value) from full symbolic expansion in 2(n-1)k formal coordinates."""
    k, n = mu.k, mu.n
    xs = [[sympy.Symbol(f"x{a}_{b}") for b in range(k)] for a in range(n - 1)]
    ys = [[sympy.Symbol(f"y{a}_{b}") for b in range(k)] for a in range(n - 1)]
    rx = right_mult_symbolic(mu, xs)
    ry = right_mult_symbolic(mu, ys)
    left = sympy.expand((rx**i).trace() * (ry**j).trace())
    right = sympy.expand((rx**i * ry**j).trace())
    if right == 0:
        return ("Indeterminate", None) if left == 0 else ("Infinity", None)
    ratio = sympy.cancel(left / right)
    coords = set(itertools.chain(*xs, *ys))
    if ratio.free_symbols & coords:
        return ("None", None)
    return ("Value", sympy.simplify(ratio))


def socle_dim(mu):
    """Largest common eigenspace of all basis right multiplications (sympy eigenvalues)."""
    k, n = mu.k, mu.n
    ops = []
    for idx in itertools.combinations(range(k), n - 1):
        m = right_mult_symbolic(mu, [basis_vec(k, i) for i in idx])
        if m != sympy.zeros(k, k):
            ops.append(m)
    best = 0

    def search(pos, space):
        nonlocal best
        dim = space.shape[1] if space is not None else k
        if dim <= best:
            return
        if pos == len(ops):
            best = dim
            return
        op = ops[pos]
        basis = space if space is not None else sympy.eye(k)
        # restrict: vectors v = basis*c with op v = lam v
        for lam in op.eigenvals():
            kernel = ((op - lam * sympy.eye(k)) * basis).nullspace()
            if not kernel:
                continue
            sub = sympy.Matrix.hstack(*[basis * c for c in kernel])
            search(pos + 1, sub)

    search(0, None)
    return best
