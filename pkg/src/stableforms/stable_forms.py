"""Hitchin's construction for 3-forms on a six-dimensional space.

For a 3-form ``Omega`` the operator ``K`` is defined by
``iota_{K(X)} mu = iota_X Omega ^ Omega`` with ``mu = e^{123456}``, and
``lambda = tr(K^2) / 6``.  ``K^2 = lambda Id`` and ``tr K = 0``; when
``lambda != 0`` the normalized ``J = K / sqrt|lambda|`` satisfies
``J^2 = sign(lambda) Id``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DegreeMismatch, NonSquareLambda, NotParaComplex, UnstableForm
from .exterior import Form, cediff, interior, pullback, two_form_cube, two_form_matrix, wedge
from .lie_algebra import LieAlg, basis_vector
from .linalg import Matrix, Subspace, identity, matmul, matsub, nullspace, scale, trace, transpose
from .scalars import FIELD, ONE, ZERO, Scalar, format_scalar, sign_by_squares, sqrt_exact


def iso_lambda5(eta: Form) -> list[Scalar]:
    """The vector X with ``iota_X mu = eta`` for a 5-form on a 6-space."""
    n = eta.dim
    if eta.degree != n - 1 and eta:
        raise DegreeMismatch(f"expected a {n - 1}-form")
    X = [ZERO] * n
    for k in range(1, n + 1):
        c = eta.coeffs.get(tuple(i for i in range(1, n + 1) if i != k), ZERO)
        X[k - 1] = c if k % 2 else -c
    return X


def hitchin_K(Omega: Form) -> Matrix:
    """Matrix of ``K_Omega``; column j is ``K(e_j)``."""
    if Omega.dim != 6:
        raise DegreeMismatch("Hitchin's operator needs a 6-dimensional space")
    if Omega.degree != 3 and Omega:
        raise DegreeMismatch("expected a 3-form")
    columns = [iso_lambda5(wedge(interior(basis_vector(6, j), Omega), Omega)) for j in range(1, 7)]
    return transpose(columns)


def hitchin_lambda(Omega: Form, K: Matrix | None = None) -> Scalar:
    K = hitchin_K(Omega) if K is None else K
    return trace(matmul(K, K)) / 6


@dataclass(frozen=True)
class EpsStructure:
    """An epsilon-complex structure ``J`` (``J^2 = eps Id``) built from ``K``."""

    J: Matrix
    eps: int
    lam: Scalar
    K: Matrix
    root: Scalar

    @property
    def kind(self) -> str:
        return "para-complex" if self.eps == 1 else "complex"


def eps_structure(Omega: Form, root: Scalar | None = None) -> EpsStructure:
    """Normalize ``K_Omega`` by ``sqrt|lambda|``.

    ``root`` picks the square root explicitly (it must satisfy
    ``root**2 == |lambda|``); otherwise it is found by square-free
    factorization and has positive content.
    """
    K = hitchin_K(Omega)
    lam = hitchin_lambda(Omega, K)
    if not lam:
        raise UnstableForm("lambda(Omega) = 0: the 3-form is not stable")
    if root is not None:
        root = FIELD(root) if not isinstance(root, Scalar) else root
        if root**2 == lam:
            eps = 1
        elif root**2 == -lam:
            eps = -1
        else:
            raise ValueError(f"{format_scalar(root)} is not a square root of +-lambda")
    else:
        eps = sign_by_squares(lam)
        if eps is None:
            raise NonSquareLambda(
                f"sqrt|lambda| is not a rational function for lambda = {format_scalar(lam)}"
            )
        root = sqrt_exact(eps * lam)
    J = scale(ONE / root, K)
    return EpsStructure(J=J, eps=eps, lam=lam, K=K, root=root)


def square_check(S: EpsStructure) -> bool:
    """``J^2 == eps Id``."""
    return matmul(S.J, S.J) == scale(FIELD(S.eps), identity(len(S.J)))


def dual_form(Omega: Form, S: EpsStructure | None = None) -> Form:
    """``Omega_hat = J^* Omega``."""
    S = eps_structure(Omega) if S is None else S
    return pullback(Omega, S.J)


def omega_pullback_sign(omega: Form, J: Matrix) -> int:
    """+1 if ``omega(JX, JY) = omega(X, Y)``, -1 if it equals ``-omega(X, Y)``, else 0."""
    W = two_form_matrix(omega)
    pulled = matmul(matmul(transpose(J), W), J)
    if pulled == W:
        return 1
    if pulled == scale(-ONE, W):
        return -1
    return 0


@dataclass(frozen=True)
class PairReport:
    compatible: bool
    normalized: bool
    half_flat: bool
    dual: Form | None


def pair_report(L: LieAlg, omega: Form, Omega: Form, require_normalized: bool = False) -> PairReport:
    """Compatibility, normalization and half-flatness of ``(omega, Omega)``.

    Normalization needs the dual form; for an unstable ``Omega`` (or one
    whose ``sqrt|lambda|`` is not representable) it is reported False
    unless ``require_normalized`` asks for an error instead.
    """
    compatible = wedge(omega, Omega).is_zero()
    dual = None
    normalized = False
    try:
        S = eps_structure(Omega)
    except (UnstableForm, NonSquareLambda):
        if require_normalized:
            raise
    else:
        dual = dual_form(Omega, S)
        normalized = wedge(dual, Omega) == two_form_cube(omega) * FIELD(2) / 3
    half_flat = cediff(L, Omega).is_zero() and wedge(omega, cediff(L, omega)).is_zero()
    return PairReport(compatible=compatible, normalized=normalized, half_flat=half_flat, dual=dual)


def eigen_distributions(S: EpsStructure) -> tuple[Subspace, Subspace]:
    """``(E+, E-)``: kernels of ``J - Id`` and ``J + Id``."""
    if S.eps != 1:
        raise NotParaComplex("eigen-distributions need an almost para-complex structure")
    n = len(S.J)
    I = identity(n)
    plus = Subspace(nullspace(matsub(S.J, I), n), n)
    minus = Subspace(nullspace(matsub(S.J, scale(-ONE, I)), n), n)
    return plus, minus


def bracket_witness(L: LieAlg, W: Subspace):
    """A pair ``(u, v, [u, v])`` of basis vectors of W with ``[u, v]`` outside W, or None."""
    for a, u in enumerate(W.basis):
        for v in W.basis[a + 1:]:
            w = L.bracket(u, v)
            if not W.contains(w):
                return u, v, w
    return None


def bracket_closed(L: LieAlg, W: Subspace) -> bool:
    return bracket_witness(L, W) is None


def nijenhuis_tensor(L: LieAlg, J: Matrix, eps: int) -> dict[tuple[int, int], list[Scalar]]:
    """``N(e_i, e_j)`` for ``i < j`` (1-based), zero values omitted.

    ``N(X, Y) = [JX, JY] - J[JX, Y] - J[X, JY] + eps [X, Y]``, which is the
    complex formula for ``eps = -1`` and the para-complex one for ``eps = 1``.
    """
    n = L.dim
    cols = transpose(J)
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            X, Y = basis_vector(n, i + 1), basis_vector(n, j + 1)
            JX, JY = cols[i], cols[j]
            a = L.bracket(JX, JY)
            b = _apply(J, L.bracket(JX, Y))
            c = _apply(J, L.bracket(X, JY))
            d = L.bracket(X, Y)
            value = [a[k] - b[k] - c[k] + eps * d[k] for k in range(n)]
            if any(value):
                out[(i + 1, j + 1)] = value
    return out


def _apply(M: Matrix, v: Sequence[Scalar]) -> list[Scalar]:
    return [sum((M[i][k] * v[k] for k in range(len(v)) if v[k] and M[i][k]), ZERO) for i in range(len(M))]


def nijenhuis(L: LieAlg, S: EpsStructure) -> dict[tuple[int, int], list[Scalar]]:
    return nijenhuis_tensor(L, S.J, S.eps)


def is_integrable(L: LieAlg, S: EpsStructure) -> bool:
    return not nijenhuis(L, S)
