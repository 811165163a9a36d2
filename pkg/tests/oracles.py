"""Independent reference computations that share no code with the package.

The classical Hochschild complex C^n(A, A) = Hom_k(A^{(x) n}, A) is built
densely from structure constants with sympy; cohomology dimensions come from
dense ranks.  Cochains are indexed by (argument tuple, output basis index),
flattened as tuple_index * dim + output.
"""

import itertools

import sympy


def structure_table(algebra):
    """Dense c[i][j][k] of a package algebra, as sympy rationals."""
    d = algebra.dim
    return [[[sympy.Rational(str(algebra.table[i][j].get(k, 0))) for k in range(d)] for j in range(d)]
            for i in range(d)]


def multiply(table, u, v):
    """Product of two coordinate vectors."""
    d = len(table)
    out = [sympy.Integer(0)] * d
    for i, x in enumerate(u):
        if x:
            for j, y in enumerate(v):
                if y:
                    for k in range(d):
                        out[k] += x * y * table[i][j][k]
    return out


def _e(d, i):
    return [sympy.Integer(1 if k == i else 0) for k in range(d)]


def apply_cochain(table, f, args):
    """Evaluate a cochain given as a dict {(tuple, out): value} on basis arguments."""
    d = len(table)
    return [f.get((tuple(args), k), 0) for k in range(d)]


def hochschild_delta(table, n, f):
    """(delta f)(a_0..a_n) = a_0 f(a_1..) + sum (-1)^{i+1} f(.. a_i a_{i+1} ..) + (-1)^{n+1} f(a_0..a_{n-1}) a_n."""
    d = len(table)
    out = {}
    for a in itertools.product(range(d), repeat=n + 1):
        val = multiply(table, _e(d, a[0]), apply_cochain(table, f, a[1:]))
        for i in range(n):
            prod = multiply(table, _e(d, a[i]), _e(d, a[i + 1]))
            for k, c in enumerate(prod):
                if c:
                    fv = apply_cochain(table, f, list(a[:i]) + [k] + list(a[i + 2:]))
                    val = [x + (-1) ** (i + 1) * c * y for x, y in zip(val, fv)]
        last = multiply(table, apply_cochain(table, f, a[:n]), _e(d, a[n]))
        val = [x + (-1) ** (n + 1) * y for x, y in zip(val, last)]
        for k, x in enumerate(val):
            if x:
                out[(a, k)] = x
    return out


def hochschild_matrix(table, n):
    d = len(table)
    src = list(itertools.product(range(d), repeat=n))
    tgt = list(itertools.product(range(d), repeat=n + 1))
    tidx = {t: r for r, t in enumerate(tgt)}
    M = sympy.zeros(len(tgt) * d, len(src) * d)
    for c, (t, o) in enumerate(itertools.product(range(len(src)), range(d))):
        for (a, k), x in hochschild_delta(table, n, {(src[t], o): 1}).items():
            M[tidx[a] * d + k, c] = x
    return M


def hochschild_dims(table, n_max):
    d = len(table)
    ranks = [hochschild_matrix(table, n).rank() for n in range(n_max + 1)]
    return [d ** (n + 1) - ranks[n] - (ranks[n - 1] if n else 0) for n in range(n_max + 1)]


def dense_rank(matrix):
    """Rank of a package Matrix through sympy."""
    rows = [[sympy.Rational(str(x)) for x in row] for row in matrix.dense()]
    return sympy.Matrix(rows).rank() if rows and rows[0] else 0


def derivation_commutator(da, db):
    """[D_a, D_b] = D_a D_b - D_b D_a for square sympy matrices."""
    return da * db - db * da


def is_derivation(table, D):
    d = len(table)
    for i in range(d):
        for j in range(d):
            lhs = D * sympy.Matrix(multiply(table, _e(d, i), _e(d, j)))
            rhs = (sympy.Matrix(multiply(table, list(D[:, i]), _e(d, j)))
                   + sympy.Matrix(multiply(table, _e(d, i), list(D[:, j]))))
            if lhs != rhs:
                return False
    return True
