"""Finite-dimensional Lie algebras given by structure constants.

Indices in the public API are 1-based (``e_1, ..., e_n``); vectors and
the stored constants are 0-based Python lists.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence, Union

from .errors import ExpressionSyntaxError, IndexOutOfRange, NotNilpotentOrder
from .linalg import Subspace, Vector, nullspace
from .scalars import ONE, ZERO, Scalar, format_scalar, to_scalar

BracketValue = Union[Mapping[int, object], Sequence[object]]


class LieAlg:
    """Structure constants ``C[i][j][k] = C^k_ij`` with ``[e_i, e_j] = sum_k C^k_ij e_k``."""

    __slots__ = ("dim", "C", "name")

    def __init__(self, dim: int, C: Sequence[Sequence[Sequence[Scalar]]], name: str = ""):
        self.dim = dim
        self.C = [[list(C[i][j]) for j in range(dim)] for i in range(dim)]
        self.name = name
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    if self.C[i][j][k] != -self.C[j][i][k]:
                        raise ValueError("structure constants are not antisymmetric")

    def bracket(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
        n = self.dim
        out = [ZERO] * n
        for i in range(n):
            if not x[i]:
                continue
            for j in range(n):
                if not y[j] or i == j:
                    continue
                c = x[i] * y[j]
                row = self.C[i][j]
                for k in range(n):
                    if row[k]:
                        out[k] += c * row[k]
        return out

    def basis_bracket(self, i: int, j: int) -> Vector:
        """``[e_i, e_j]`` for 1-based indices."""
        return list(self.C[i - 1][j - 1])

    def brackets(self) -> list[tuple[int, int, dict[int, Scalar]]]:
        """Nonzero brackets ``(i, j, {k: C^k_ij})`` with ``i < j``."""
        out = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                vec = {k + 1: c for k, c in enumerate(self.C[i][j]) if c}
                if vec:
                    out.append((i + 1, j + 1, vec))
        return out

    def describe_brackets(self) -> list[str]:
        lines = []
        for i, j, vec in self.brackets():
            text = ""
            for k, c in vec.items():
                if c == ONE or c == -ONE:
                    body = f"e{k}"
                else:
                    body = f"({format_scalar(c)})*e{k}"
                neg = c == -ONE
                if not text:
                    text = ("-" if neg else "") + body
                else:
                    text += (" - " if neg else " + ") + body
            lines.append(f"[e{i},e{j}] = {text}")
        return lines

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlg) and self.dim == other.dim and self.C == other.C

    def __repr__(self) -> str:
        label = self.name or "LieAlg"
        return f"<{label} dim={self.dim} brackets={len(self.brackets())}>"


def basis_vector(dim: int, k: int) -> Vector:
    v = [ZERO] * dim
    v[k - 1] = ONE
    return v


def from_brackets(
    dim: int,
    brackets: Iterable[tuple[int, int, BracketValue]],
    name: str = "",
) -> LieAlg:
    """Build a Lie algebra from its nonzero brackets ``[e_i, e_j] = vector``.

    ``vector`` is a mapping ``{k: coefficient}`` or a full coefficient list.
    Missing brackets are zero; ``[e_j, e_i]`` is filled in by antisymmetry.
    """
    C = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for i, j, value in brackets:
        if not (1 <= i < j <= dim):
            raise IndexOutOfRange(f"bracket indices ({i}, {j}) outside 1 <= i < j <= {dim}")
        if isinstance(value, Mapping):
            items = value.items()
        else:
            if len(value) != dim:
                raise IndexOutOfRange(f"bracket vector must have length {dim}")
            items = ((k + 1, c) for k, c in enumerate(value))
        for k, c in items:
            if not 1 <= k <= dim:
                raise IndexOutOfRange(f"basis index {k} outside 1..{dim}")
            c = to_scalar(c)
            C[i - 1][j - 1][k - 1] = c
            C[j - 1][i - 1][k - 1] = -c
    return LieAlg(dim, C, name)


def abelian(dim: int) -> LieAlg:
    return from_brackets(dim, [], name=f"abelian{dim}")


_PAIR_TERM = re.compile(r"([+-]?)(?:(\d+)\*)?(\d\d)")


def parse_tuple(text: str, name: str = "") -> LieAlg:
    """Parse the differential notation ``(0, 0, 12, 13, 14+23, 34-25)``.

    Entry k lists ``de^k`` with ``ij`` standing for ``e^i ^ e^j``; the
    structure constants follow from ``de^k = -sum_{i<j} C^k_ij e^ij``.
    Entries may carry integer coefficients (``2*14``).
    """
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ExpressionSyntaxError("tuple must be enclosed in parentheses", text, 0)
    offset = text.index("(") + 1
    entries = body[1:-1].split(",")
    dim = len(entries)
    if dim > 9:
        raise ExpressionSyntaxError("two-digit index notation supports dim <= 9", text, 0)
    brackets: dict[tuple[int, int], dict[int, Scalar]] = {}
    pos = offset
    for k, raw in enumerate(entries, start=1):
        entry = re.sub(r"\s+", "", raw)
        start = pos + (len(raw) - len(raw.lstrip()))
        pos += len(raw) + 1
        if entry == "0":
            continue
        if not entry:
            raise ExpressionSyntaxError(f"empty entry {k}", text, start)
        at = 0
        while at < len(entry):
            m = _PAIR_TERM.match(entry, at)
            if m is None or (at > 0 and not m.group(1)):
                raise ExpressionSyntaxError(f"bad term in entry {k}", text, start + at)
            sign = -1 if m.group(1) == "-" else 1
            coeff = sign * int(m.group(2) or 1)
            i, j = int(m.group(3)[0]), int(m.group(3)[1])
            if i == j or i == 0 or j == 0:
                raise ExpressionSyntaxError(f"invalid index pair {m.group(3)}", text, start + m.start(3))
            if max(i, j) >= k:
                raise NotNilpotentOrder(
                    f"entry {k} references e^{max(i, j)} (needs indices < {k})", text, start + m.start(3)
                )
            if i > j:
                i, j, coeff = j, i, -coeff
            slot = brackets.setdefault((i, j), {})
            slot[k] = slot.get(k, ZERO) - coeff
            at = m.end()
    return from_brackets(dim, [(i, j, v) for (i, j), v in sorted(brackets.items())], name=name)


def jacobi_defect(L: LieAlg) -> list[tuple[int, int, int, Vector]]:
    """Triples ``i < j < k`` where the Jacobi identity fails, with the defect."""
    n = L.dim
    e = [basis_vector(n, k) for k in range(1, n + 1)]
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total = [ZERO] * n
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = L.bracket(L.bracket(e[a], e[b]), e[c])
                    total = [x + y for x, y in zip(total, inner)]
                if any(total):
                    out.append((i + 1, j + 1, k + 1, total))
    return out


def bracket_span(L: LieAlg, A: Subspace, B: Subspace) -> Subspace:
    vecs = [L.bracket(u, v) for u in A.basis for v in B.basis]
    return Subspace([v for v in vecs if any(v)], L.dim)


def lower_central_series(L: LieAlg) -> list[Subspace]:
    """``C^0 = g, C^{k+1} = [g, C^k]`` until the dimension stabilizes."""
    g = Subspace.whole(L.dim)
    series = [g]
    while True:
        nxt = bracket_span(L, g, series[-1])
        if nxt.dim == series[-1].dim:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def derived_series(L: LieAlg) -> list[Subspace]:
    series = [Subspace.whole(L.dim)]
    while True:
        cur = series[-1]
        nxt = bracket_span(L, cur, cur)
        if nxt.dim == cur.dim:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def _preimage_into(L: LieAlg, target: Subspace) -> Subspace:
    """``{X : [X, g] is contained in target}``."""
    n = L.dim
    ann = target.annihilator()
    rows = []
    for phi in ann:
        for j in range(n):
            # phi([X, e_j]) = sum_i X_i sum_k phi_k C^k_ij
            rows.append([sum((phi[k] * L.C[i][j][k] for k in range(n) if L.C[i][j][k]), ZERO) for i in range(n)])
    rows = [r for r in rows if any(r)]
    return Subspace(nullspace(rows, n), n)


def center(L: LieAlg) -> Subspace:
    return _preimage_into(L, Subspace.zero(L.dim))


def ascending_central_series(L: LieAlg) -> list[Subspace]:
    """``g_0 = 0, g_l = {X : [X, g] in g_{l-1}}`` until stabilization."""
    series = [Subspace.zero(L.dim)]
    while True:
        nxt = _preimage_into(L, series[-1])
        if nxt.dim == series[-1].dim:
            return series
        series.append(nxt)
        if nxt.dim == L.dim:
            return series


def nilpotency_step(L: LieAlg) -> int | None:
    """Least s with ``C^s g = 0``; None when the algebra is not nilpotent."""
    series = lower_central_series(L)
    if series[-1].dim != 0:
        return None
    return len(series) - 1


def series_dims(series: Sequence[Subspace]) -> list[int]:
    return [s.dim for s in series]


def is_nilpotent(L: LieAlg) -> bool:
    return nilpotency_step(L) is not None


__all__ = [
    "LieAlg",
    "Subspace",
    "abelian",
    "ascending_central_series",
    "basis_vector",
    "bracket_span",
    "center",
    "derived_series",
    "from_brackets",
    "is_nilpotent",
    "jacobi_defect",
    "lower_central_series",
    "nilpotency_step",
    "parse_tuple",
    "series_dims",
]
