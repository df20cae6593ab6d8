"""Dense exact linear algebra over the scalar field.

Matrices are lists of rows; ``M[i][j]`` is the i-th component of the
image of the j-th basis vector.  Elimination pivots on the first nonzero
entry of each column, so results are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularMatrix
from .scalars import FIELD, ONE, ZERO, Scalar, format_scalar

Vector = list
Matrix = list


def zeros(rows: int, cols: int | None = None) -> Matrix:
    cols = rows if cols is None else cols
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def diag(entries: Sequence) -> Matrix:
    n = len(entries)
    return [[FIELD(entries[i]) if i == j else ZERO for j in range(n)] for i in range(n)]


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[FIELD(x) if not isinstance(x, Scalar) else x for x in row] for row in rows]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise DimensionMismatch("inner dimensions differ")
    bt = transpose(b)
    return [[_dot(row, col) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence[Scalar]) -> Vector:
    return [_dot(row, v) for row in a]


def _dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    total = ZERO
    for x, y in zip(u, v):
        if x and y:
            total += x * y
    return total


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matsub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c, m: Matrix) -> Matrix:
    return [[c * x for x in row] for row in m]


def trace(m: Matrix) -> Scalar:
    return sum((m[i][i] for i in range(len(m))), ZERO)


def is_zero(m: Matrix) -> bool:
    return all(not x for row in m for x in row)


def is_diagonal(m: Matrix) -> bool:
    return all(not m[i][j] for i in range(len(m)) for j in range(len(m[0])) if i != j)


def is_symmetric(m: Matrix) -> bool:
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def map_entries(f, m: Matrix) -> Matrix:
    return [[f(x) for x in row] for row in m]


def format_matrix(m: Matrix) -> list[list[str]]:
    return [[format_scalar(x) for x in row] for row in m]


def rref(rows: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(r) for r in rows]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = ONE / a[r][c]
        a[r] = [x * inv if x else x for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y if y else x for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(rows: Matrix) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(m: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    if ncols is None:
        ncols = len(m[0])
    if not m:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in red]


def det(m: Matrix) -> Scalar:
    a = [list(r) for r in m]
    n = len(a)
    result = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        result *= a[c][c]
        inv = ONE / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


class Subspace:
    """Span of vectors over the scalar field, kept in reduced echelon form.

    Two subspaces are equal iff their echelon bases coincide, which makes
    ``==`` a span-equality test.
    """

    __slots__ = ("ambient", "basis")

    def __init__(self, vectors: Iterable[Sequence], ambient: int | None = None):
        vecs = [[x if isinstance(x, Scalar) else FIELD(x) for x in v] for v in vectors]
        if ambient is None:
            if not vecs:
                raise ValueError("ambient dimension needed for an empty span")
            ambient = len(vecs[0])
        if any(len(v) != ambient for v in vecs):
            raise DimensionMismatch("vectors of different lengths")
        self.ambient = ambient
        self.basis = rref(vecs)[0] if vecs else []

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls(identity(n), n)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls([], n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def contains(self, v: Sequence) -> bool:
        if not any(v):
            return True
        return rank(self.basis + [list(v)]) == self.dim

    __contains__ = contains

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, tuple(tuple(format_scalar(x) for x in v) for v in self.basis)))

    def __repr__(self) -> str:
        rows = ["(" + ", ".join(format_scalar(x) for x in v) + ")" for v in self.basis]
        return f"Subspace[{self.ambient}]({', '.join(rows)})"

    def annihilator(self) -> list[Vector]:
        """Covectors vanishing on the subspace."""
        if not self.basis:
            return identity(self.ambient)
        return nullspace(self.basis, self.ambient)


def inertia(m: Sequence[Sequence]) -> tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) of a symmetric rational matrix.

    Symmetric elimination (congruence) over Q: a nonzero diagonal pivot
    contributes its sign; when the remaining diagonal vanishes but an
    off-diagonal entry b does not, the 2x2 block [[0, b], [b, 0]]
    contributes one positive and one negative square.
    """
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    if any(a[i][j] != a[j][i] for i in range(n) for j in range(n)):
        raise ValueError("matrix is not symmetric")
    plus = minus = 0
    active = list(range(n))
    while active:
        p = next((i for i in active if a[i][i] != 0), None)
        if p is not None:
            d = a[p][p]
            if d > 0:
                plus += 1
            else:
                minus += 1
            active.remove(p)
            for i in active:
                if a[i][p]:
                    f = a[i][p] / d
                    for j in active:
                        a[i][j] -= f * a[p][j]
            continue
        pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        b = a[i][j]
        plus += 1
        minus += 1
        active.remove(i)
        active.remove(j)
        # eliminate both rows against the block [[0, b], [b, 0]]
        for k in active:
            ck_i, ck_j = a[k][i], a[k][j]
            if not (ck_i or ck_j):
                continue
            for l in active:
                a[k][l] -= (ck_i * a[j][l] + ck_j * a[i][l]) / b
    zero = n - plus - minus
    return plus, minus, zero
