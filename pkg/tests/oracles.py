"""Independent reference implementations used to cross-check the library.

Nothing here imports the package's arithmetic: forms are dicts of
``Fraction`` (or sympy) values evaluated as alternating multilinear maps,
and curvature is recomputed from the Koszul formula at rational points.
"""

from __future__ import annotations

import itertools
import sympy


def perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
            elif seq[i] == seq[j]:
                return 0
    return sign


def form_eval(form: dict, vectors) -> object:
    """Value of ``sum c_I e^I`` on vectors with ``e^I(e_I) = 1``."""
    k = len(vectors)
    total = 0
    for idx, c in form.items():
        m = sympy.Matrix(k, k, lambda r, s: vectors[s][idx[r] - 1])
        total += c * m.det()
    return total


def form_from_eval(fn, dim: int, degree: int) -> dict:
    out = {}
    for idx in itertools.combinations(range(1, dim + 1), degree):
        vecs = [[1 if t == i else 0 for t in range(1, dim + 1)] for i in idx]
        v = sympy.cancel(sympy.sympify(fn(vecs)))
        if v != 0:
            out[idx] = v
    return out


def wedge(a: dict, p: int, b: dict, q: int, dim: int) -> dict:
    """Shuffle-product definition of the (non-normalized) wedge."""

    def fn(vecs):
        total = 0
        for left in itertools.combinations(range(p + q), p):
            right = [i for i in range(p + q) if i not in left]
            s = perm_sign(list(left) + right)
            total += s * form_eval(a, [vecs[i] for i in left]) * form_eval(b, [vecs[i] for i in right])
        return total

    return form_from_eval(fn, dim, p + q)


def bracket(C, x, y):
    n = len(C)
    return [sum(C[i][j][k] * x[i] * y[j] for i in range(n) for j in range(n)) for k in range(n)]


def d(C, a: dict, p: int, dim: int) -> dict:
    """Invariant formula ``d a(X_0..X_p) = sum_{i<j} (-1)^{i+j} a([X_i,X_j], ...)``."""

    def fn(vecs):
        total = 0
        for i, j in itertools.combinations(range(p + 1), 2):
            rest = [vecs[t] for t in range(p + 1) if t not in (i, j)]
            total += (-1) ** (i + j) * form_eval(a, [bracket(C, vecs[i], vecs[j])] + rest)
        return total

    return form_from_eval(fn, dim, p + 1)


def hitchin_K(omega: dict):
    """``K^a_b = 1/12 eps_{a i1 i2 j1 j2 j3} Omega_{b i1 i2} Omega_{j1 j2 j3}`` (0-based output)."""
    T = {}
    for idx, c in omega.items():
        for perm in itertools.permutations(range(3)):
            T[tuple(idx[t] for t in perm)] = perm_sign(perm) * c
    K = sympy.zeros(6, 6)
    for a in range(1, 7):
        others = [t for t in range(1, 7) if t != a]
        for b in range(1, 7):
            total = 0
            for perm in itertools.permutations(others):
                s = perm_sign((a,) + perm)
                x = T.get((b, perm[0], perm[1]))
                y = T.get(perm[2:])
                if x is not None and y is not None:
                    total += s * x * y
            K[a - 1, b - 1] = sympy.cancel(sympy.Rational(1, 12) * total)
    return K


def levi_civita_at(C, g):
    """Christoffel table ``G[i][j] = nabla_{e_i} e_j`` from the Koszul formula.

    ``g`` is a sympy Matrix with numeric entries; C a nested list.
    """
    n = g.shape[0]
    e = [[1 if t == i else 0 for t in range(n)] for i in range(n)]
    ginv = g.inv()

    def ip(x, y):
        return (sympy.Matrix([x]) * g * sympy.Matrix(y))[0]

    G = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            low = [
                sympy.Rational(1, 2)
                * (
                    ip(bracket(C, e[i], e[j]), e[k])
                    - ip(bracket(C, e[j], e[k]), e[i])
                    + ip(bracket(C, e[k], e[i]), e[j])
                )
                for k in range(n)
            ]
            G[i][j] = list(ginv * sympy.Matrix(low))
    return G


def ricci_at(C, g):
    """Ricci tensor ``Ric(Y, Z) = tr(X -> R(X, Y) Z)`` and scalar curvature at a point."""
    n = g.shape[0]
    G = levi_civita_at(C, g)
    nabla = [sympy.Matrix(n, n, lambda r, j: G[i][j][r]) for i in range(n)]

    def nab(x):
        return sum((x[i] * nabla[i] for i in range(n)), sympy.zeros(n, n))

    e = [[1 if t == i else 0 for t in range(n)] for i in range(n)]
    Rop = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            Rop[a][b] = nabla[a] * nabla[b] - nabla[b] * nabla[a] - nab(bracket(C, e[a], e[b]))
    Ric = sympy.zeros(n, n)
    for y in range(n):
        for z in range(n):
            Ric[y, z] = sum(Rop[x][y][x, z] for x in range(n))
    return Ric, (g.inv() * Ric).trace()
