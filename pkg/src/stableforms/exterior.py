"""Left-invariant forms: wedge, interior product, Chevalley-Eilenberg d.

Conventions (non-normalized, i.e. determinant convention):

* ``e^{i1...ik}(e_{i1}, ..., e_{ik}) = 1``, so ``dx^dy = dx(x)dy - dy(x)dx``;
* ``de^k = -sum_{i<j} C^k_ij e^i ^ e^j`` extended as a graded derivation;
* the volume form is ``mu = e^{12...n}``.

A ``Form`` stores its coefficients on strictly increasing 1-based
multi-indices; zero coefficients are never stored.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import DegreeMismatch, DimensionMismatch, ExpressionSyntaxError
from .lie_algebra import LieAlg
from .linalg import Matrix, Subspace, det, rref
from .scalars import (
    FIELD,
    ONE,
    ZERO,
    ExpressionParser,
    Scalar,
    format_scalar,
    symbol,
    symbol_names,
    to_scalar,
)
from .scalars import substitute as substitute_scalar

MultiIndex = tuple


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 if it has repeats."""
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class Form:
    """A left-invariant k-form on an n-dimensional Lie algebra."""

    __slots__ = ("dim", "degree", "coeffs")

    def __init__(self, dim: int, degree: int, coeffs: Mapping[Sequence[int], object] | None = None):
        self.dim = dim
        self.degree = degree
        clean: dict[MultiIndex, Scalar] = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise DegreeMismatch(f"multi-index {idx} in a {degree}-form")
            if any(not 1 <= i <= dim for i in idx):
                raise DimensionMismatch(f"multi-index {idx} outside 1..{dim}")
            sign = permutation_sign(idx)
            if sign == 0:
                continue
            c = to_scalar(c)
            key = tuple(sorted(idx))
            total = clean.get(key, ZERO) + sign * c
            if total:
                clean[key] = total
            else:
                clean.pop(key, None)
        self.coeffs = clean

    @classmethod
    def zero(cls, dim: int, degree: int) -> "Form":
        return cls(dim, degree)

    @classmethod
    def basis(cls, dim: int, *indices: int) -> "Form":
        """``e^{i1} ^ ... ^ e^{ik}`` (indices in any order, sign applied)."""
        return cls(dim, len(indices), {tuple(indices): ONE})

    def _new(self, coeffs: dict) -> "Form":
        out = Form.__new__(Form)
        out.dim, out.degree = self.dim, self.degree
        out.coeffs = {k: v for k, v in coeffs.items() if v}
        return out

    def __getitem__(self, idx: Sequence[int]) -> Scalar:
        idx = tuple(idx)
        sign = permutation_sign(idx)
        if sign == 0:
            return ZERO
        return sign * self.coeffs.get(tuple(sorted(idx)), ZERO)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "Form"):
        if not isinstance(other, Form):
            raise TypeError("expected a Form")
        if other.dim != self.dim:
            raise DimensionMismatch("forms live in different dimensions")
        if other.degree != self.degree and self and other:
            raise DegreeMismatch("cannot add forms of different degree")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        if not self:
            return other
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return self._new(out)

    def __neg__(self) -> "Form":
        return self._new({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, c) -> "Form":
        if isinstance(c, Form):
            return wedge(self, c)
        c = to_scalar(c)
        return self._new({k: c * v for k, v in self.coeffs.items()})

    def __rmul__(self, c) -> "Form":
        return self.__mul__(c)

    def __truediv__(self, c) -> "Form":
        c = to_scalar(c)
        if not c:
            raise ZeroDivisionError("division of a form by zero")
        return self._new({k: v / c for k, v in self.coeffs.items()})

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        if not self and not other:
            return self.dim == other.dim
        return self.dim == other.dim and self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.dim, self.degree, format_form(self)))

    def __repr__(self) -> str:
        return f"Form({format_form(self)!r}, dim={self.dim}, degree={self.degree})"

    def terms(self) -> list[tuple[MultiIndex, Scalar]]:
        return sorted(self.coeffs.items())

    def map_coefficients(self, f) -> "Form":
        return self._new({k: f(v) for k, v in self.coeffs.items()})


def _merge_sign(a: MultiIndex, b: MultiIndex) -> int:
    """Sign of sorting ``a + b`` for sorted, disjoint ``a`` and ``b``."""
    inversions = 0
    for x in a:
        for y in b:
            if x > y:
                inversions += 1
    return -1 if inversions & 1 else 1


def wedge(alpha: Form, beta: Form) -> Form:
    if alpha.dim != beta.dim:
        raise DimensionMismatch("forms live in different dimensions")
    degree = alpha.degree + beta.degree
    out: dict[MultiIndex, Scalar] = {}
    if degree <= alpha.dim:
        for ia, ca in alpha.coeffs.items():
            sa = set(ia)
            for ib, cb in beta.coeffs.items():
                if sa.intersection(ib):
                    continue
                key = tuple(sorted(ia + ib))
                term = ca * cb
                if _merge_sign(ia, ib) < 0:
                    term = -term
                out[key] = out.get(key, ZERO) + term
    res = Form.__new__(Form)
    res.dim, res.degree = alpha.dim, degree
    res.coeffs = {k: v for k, v in out.items() if v}
    return res


def wedge_all(forms: Iterable[Form]) -> Form:
    forms = list(forms)
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def interior(X: Sequence[Scalar], alpha: Form) -> Form:
    """Interior product ``iota_X alpha``; ``iota_X e^j = X^j``."""
    if len(X) != alpha.dim:
        raise DimensionMismatch("vector and form dimensions differ")
    if alpha.degree == 0:
        raise DegreeMismatch("interior product of a 0-form")
    out: dict[MultiIndex, Scalar] = {}
    for idx, c in alpha.coeffs.items():
        for r, i in enumerate(idx):
            x = X[i - 1]
            if not x:
                continue
            key = idx[:r] + idx[r + 1:]
            term = c * x if r % 2 == 0 else -(c * x)
            out[key] = out.get(key, ZERO) + term
    res = Form.__new__(Form)
    res.dim, res.degree = alpha.dim, alpha.degree - 1
    res.coeffs = {k: v for k, v in out.items() if v}
    return res


def one_form_differentials(L: LieAlg) -> list[dict[MultiIndex, Scalar]]:
    """``de^k`` for k = 1..n as ``{(i, j): coefficient}`` with ``i < j``."""
    n = L.dim
    out = []
    for k in range(n):
        dk = {}
        for i in range(n):
            for j in range(i + 1, n):
                c = L.C[i][j][k]
                if c:
                    dk[(i + 1, j + 1)] = -c
        out.append(dk)
    return out


def cediff(L: LieAlg, alpha: Form) -> Form:
    """Chevalley-Eilenberg differential of a left-invariant form."""
    if alpha.dim != L.dim:
        raise DimensionMismatch("form and algebra dimensions differ")
    de = one_form_differentials(L)
    out: dict[MultiIndex, Scalar] = {}
    for idx, c in alpha.coeffs.items():
        for r, i in enumerate(idx):
            for (a, b), cc in de[i - 1].items():
                new = idx[:r] + (a, b) + idx[r + 1:]
                sign = permutation_sign(new)
                if sign == 0:
                    continue
                if r % 2:
                    sign = -sign
                key = tuple(sorted(new))
                term = c * cc
                out[key] = out.get(key, ZERO) + (term if sign > 0 else -term)
    res = Form.__new__(Form)
    res.dim, res.degree = alpha.dim, alpha.degree + 1
    res.coeffs = {k: v for k, v in out.items() if v}
    return res


def is_closed(L: LieAlg, alpha: Form) -> bool:
    return cediff(L, alpha).is_zero()


def evaluate_form(alpha: Form, vectors: Sequence[Sequence[Scalar]]) -> Scalar:
    """``alpha(X_1, ..., X_k)`` under the determinant convention."""
    if len(vectors) != alpha.degree:
        raise DegreeMismatch(f"{alpha.degree}-form evaluated on {len(vectors)} vectors")
    total = ZERO
    for idx, c in alpha.coeffs.items():
        minor = [[v[i - 1] for i in idx] for v in vectors]
        d = det(minor) if idx else ONE
        if d:
            total += c * d
    return total


def two_form_matrix(omega: Form) -> Matrix:
    """``W[i][j] = omega(e_i, e_j)`` (0-based)."""
    if omega.degree != 2 and omega:
        raise DegreeMismatch("expected a 2-form")
    n = omega.dim
    W = [[ZERO] * n for _ in range(n)]
    for (i, j), c in omega.coeffs.items():
        W[i - 1][j - 1] = c
        W[j - 1][i - 1] = -c
    return W


def two_form_from_matrix(W: Matrix) -> Form:
    n = len(W)
    return Form(n, 2, {(i + 1, j + 1): W[i][j] for i in range(n) for j in range(i + 1, n) if W[i][j]})


def pullback(alpha: Form, M: Matrix) -> Form:
    """``(M^* alpha)(X, Y, ...) = alpha(MX, MY, ...)``."""
    n = alpha.dim
    images = [Form(n, 1, {(a + 1,): M[i][a] for a in range(n) if M[i][a]}) for i in range(n)]
    out = Form.zero(n, alpha.degree)
    for idx, c in alpha.coeffs.items():
        term = wedge_all([images[i - 1] for i in idx]) if idx else Form(n, 0, {(): ONE})
        out = out + term * c
    return out


def substitute(alpha: Form, subs: Mapping[str, object]) -> Form:
    """Coefficient-wise substitution; terms that vanish are dropped."""
    if not subs:
        return alpha
    return alpha.map_coefficients(lambda c: substitute_scalar(c, subs))


def generic_two_form(dim: int = 6) -> Form:
    """``sum_{i<j} a_ij e^{ij}`` with one fresh symbol per pair."""
    if dim > 6:
        raise DimensionMismatch("the standard symbol table covers dim <= 6")
    return Form(dim, 2, {(i, j): symbol(f"a{i}{j}") for i in range(1, dim + 1) for j in range(i + 1, dim + 1)})


def top_coefficient(alpha: Form) -> Scalar:
    """Coefficient of ``e^{1...n}`` in a top-degree form."""
    return alpha.coeffs.get(tuple(range(1, alpha.dim + 1)), ZERO)


def two_form_cube(omega: Form) -> Form:
    return wedge(wedge(omega, omega), omega)


def nondegeneracy_certificate(omega: Form) -> Scalar:
    """Coefficient of ``omega^n/2`` on the volume form (6x the Pfaffian for n = 6)."""
    if omega.degree != 2 or omega.dim % 2:
        raise DegreeMismatch("need a 2-form in even dimension")
    power = Form(omega.dim, 0, {(): ONE})
    for _ in range(omega.dim // 2):
        power = wedge(power, omega)
    return top_coefficient(power)


def is_nondegenerate2(omega: Form) -> tuple[bool, Scalar]:
    cert = nondegeneracy_certificate(omega)
    return bool(cert), cert


def wedge_closure_form(L: LieAlg, omega: Form) -> Form:
    return wedge(omega, cediff(L, omega))


def wedge_closure_conditions(L: LieAlg, omega: Form) -> list[Scalar]:
    """Nonzero coefficients of ``omega ^ d omega``, in multi-index order."""
    return [c for _, c in wedge_closure_form(L, omega).terms()]


def _linear_part(c: Scalar, names: Sequence[str]) -> list:
    """Coefficient vector of a scalar that is linear homogeneous in the symbols."""
    if c.denom != 1:
        raise ValueError("coefficient is not polynomial")
    vec = [ZERO] * len(names)
    for monom, coeff in c.numer.terms():
        if sum(monom) != 1:
            raise ValueError("coefficient is not linear homogeneous")
        vec[monom.index(1)] = FIELD(coeff)
    return vec


def linear_family_space(alpha: Form, names: Sequence[str] | None = None) -> Subspace:
    """Span of the coefficient vectors of a family linear in its parameters.

    The ambient coordinates are the multi-indices of the form's degree in
    lexicographic order; each parameter contributes one spanning vector.
    """
    all_names = symbol_names(FIELD)
    keys = list(combinations(range(1, alpha.dim + 1), alpha.degree))
    columns: dict[str, list] = {}
    for r, key in enumerate(keys):
        c = alpha.coeffs.get(key, ZERO)
        if not c:
            continue
        for name, value in zip(all_names, _linear_part(c, all_names)):
            if value:
                columns.setdefault(name, [ZERO] * len(keys))[r] = value
    if names is not None:
        columns = {k: v for k, v in columns.items() if k in names}
    return Subspace(list(columns.values()), len(keys))


def closed_two_form_family(L: LieAlg) -> tuple[Form, dict[str, Scalar]]:
    """All closed 2-forms, solved exactly from ``d omega = 0``.

    Returns the family (the generic 2-form with dependent symbols
    eliminated) and the solution ``{dependent symbol: expression}``.
    Later symbols are eliminated in favour of earlier ones.
    """
    omega = generic_two_form(L.dim)
    d_omega = cediff(L, omega)
    names = [str(c) for _, c in sorted(omega.coeffs.items())]
    order = list(reversed(names))
    rows = [_linear_part(c, symbol_names(FIELD)) for _, c in d_omega.terms()]
    all_names = symbol_names(FIELD)
    matrix = [[row[all_names.index(n)] for n in order] for row in rows]
    solution: dict[str, Scalar] = {}
    if matrix:
        red, pivots = rref(matrix)
        for row, p in zip(red, pivots):
            expr = ZERO
            for col, value in enumerate(row):
                if col != p and value:
                    expr -= value * symbol(order[col])
            solution[order[p]] = expr
    return substitute(omega, solution), solution


# -- literals ---------------------------------------------------------------


class _FormParser(ExpressionParser):
    def __init__(self, text: str, dim: int):
        super().__init__(text, FIELD)
        self.dim = dim

    def atom_identifier(self, name: str, pos: int):
        if name.startswith("e") and name[1:].isdigit():
            digits = [int(ch) for ch in name[1:]]
            if any(d < 1 or d > self.dim for d in digits):
                self.error(f"basis index outside 1..{self.dim}", pos)
            if any(a >= b for a, b in zip(digits, digits[1:])):
                self.error("basis indices must be strictly increasing", pos)
            return Form.basis(self.dim, *digits)
        return super().atom_identifier(name, pos)

    def raise_power(self, base, exponent, pos):
        if isinstance(base, Form):
            self.error("powers of forms are not allowed", pos)
        return base**exponent

    def combine(self, op, lhs, rhs, pos):
        lf, rf = isinstance(lhs, Form), isinstance(rhs, Form)
        if op in "+-":
            if lf != rf:
                self.error("cannot add a scalar and a form", pos)
            if lf and lhs and rhs and lhs.degree != rhs.degree:
                self.error("cannot add forms of different degree", pos)
            return lhs + rhs if op == "+" else lhs - rhs
        if op == "*":
            if lf and rf:
                return wedge(lhs, rhs)
            return lhs * rhs if lf else rhs * lhs
        if rf:
            self.error("cannot divide by a form", pos)
        if not rhs:
            self.error("division by zero", pos)
        return lhs / rhs


def parse_form(text: str, dim: int = 6, degree: int | None = None) -> Form:
    """Parse a form literal such as ``a46*e46 + a56*e56 - e136``."""
    value = _FormParser(text, dim).parse()
    if not isinstance(value, Form):
        if value:
            value = Form(dim, 0, {(): value})
        else:
            value = Form.zero(dim, degree or 0)
    if degree is not None and value and value.degree != degree:
        raise ExpressionSyntaxError(f"expected a {degree}-form, got degree {value.degree}", text, 0)
    if degree is not None and not value:
        value = Form.zero(dim, degree)
    return value


def _format_term(idx: MultiIndex, c: Scalar) -> tuple[bool, str]:
    basis = "e" + "".join(str(i) for i in idx) if idx else ""
    neg = False
    if c.denom == 1 and len(c.numer) == 1:
        (monom, coeff), = c.numer.terms()
        if coeff < 0:
            neg, c = True, -c
    text = format_scalar(c)
    if not basis:
        return neg, text
    if text == "1":
        return neg, basis
    if c.denom == 1 and len(c.numer) == 1:
        return neg, f"{text}*{basis}"
    return neg, f"({text})*{basis}"


def format_form(alpha: Form) -> str:
    """Canonical literal; ``parse_form(format_form(a)) == a``."""
    if not alpha:
        return "0"
    parts = []
    for n, (idx, c) in enumerate(alpha.terms()):
        neg, text = _format_term(idx, c)
        if n == 0:
            parts.append(f"-{text}" if neg else text)
        else:
            parts.append(f" - {text}" if neg else f" + {text}")
    return "".join(parts)
