"""Associated metrics and curvature of left-invariant pseudo-Riemannian metrics.

Index layout (0-based lists) mirrors the usual component formulas:

* ``gamma[i][j][n] = Gamma^n_ij`` with ``nabla_{e_i} e_j = Gamma^n_ij e_n``;
* ``riemann[i][j][k][s] = R^s_ijk`` with ``R(e_i, e_j) e_k = R^s_ijk e_s``;
* ``ricci[i][j] = sum_k R^k_kij``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import AsymmetricResult, DegeneratePoint, PoleAtPoint, SingularMatrix, SingularMetric
from .exterior import Form, two_form_matrix
from .lie_algebra import LieAlg
from .linalg import Matrix, inertia, inverse, is_symmetric, matmul, trace
from .scalars import FIELD, ZERO, Scalar, evaluate, free_symbols, symbol_names
from .stable_forms import EpsStructure, omega_pullback_sign

DEFAULT_RETRY_BUDGET = 16
PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103)


@dataclass(frozen=True)
class Metric:
    g: Matrix
    ginv: Matrix

    @property
    def dim(self) -> int:
        return len(self.g)


def metric_from_matrix(g: Matrix) -> Metric:
    if not is_symmetric(g):
        raise AsymmetricResult("metric matrix is not symmetric")
    try:
        ginv = inverse(g)
    except SingularMatrix:
        raise SingularMetric("metric is degenerate") from None
    return Metric(g=[list(r) for r in g], ginv=ginv)


def associated_metric(omega: Form, S: EpsStructure) -> Metric:
    """``g(X, Y) = omega(X, J Y)``, i.e. ``g = W J``.

    Requires ``omega(JX, JY) = -eps omega(X, Y)``, which is what makes
    ``g`` symmetric.
    """
    if omega_pullback_sign(omega, S.J) != -S.eps:
        raise AsymmetricResult("omega(JX, JY) != -eps omega(X, Y); g would not be symmetric")
    return metric_from_matrix(matmul(two_form_matrix(omega), S.J))


def christoffel(L: LieAlg, M: Metric) -> list:
    """Levi-Civita connection of a left-invariant metric.

    ``Gamma^n_ij = 1/2 g^{kn} (g_pk C^p_ij + g_pj C^p_ki + g_ip C^p_kj)``.
    """
    n = L.dim
    C, g, ginv = L.C, M.g, M.ginv
    half = FIELD(1) / 2
    gamma = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            inner = []
            for k in range(n):
                total = ZERO
                for p in range(n):
                    if C[i][j][p] and g[p][k]:
                        total += C[i][j][p] * g[p][k]
                    if C[k][i][p] and g[p][j]:
                        total += C[k][i][p] * g[p][j]
                    if C[k][j][p] and g[i][p]:
                        total += C[k][j][p] * g[i][p]
                inner.append(total)
            for m in range(n):
                total = ZERO
                for k in range(n):
                    if inner[k] and ginv[k][m]:
                        total += ginv[k][m] * inner[k]
                gamma[i][j][m] = total * half
    return gamma


def riemann(L: LieAlg, gamma: Sequence) -> list:
    """``R^s_ijk = Gamma^s_ip Gamma^p_jk - Gamma^s_jp Gamma^p_ik - C^p_ij Gamma^s_pk``."""
    n = L.dim
    C = L.C
    R = [[[[ZERO] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if j < i:
                R[i][j] = [[-x for x in row] for row in R[j][i]]
                continue
            for k in range(n):
                for s in range(n):
                    total = ZERO
                    for p in range(n):
                        a = gamma[i][p][s]
                        if a:
                            b = gamma[j][k][p]
                            if b:
                                total += a * b
                        a = gamma[j][p][s]
                        if a:
                            b = gamma[i][k][p]
                            if b:
                                total -= a * b
                        c = C[i][j][p]
                        if c:
                            b = gamma[p][k][s]
                            if b:
                                total -= c * b
                    R[i][j][k][s] = total
    return R


def ricci(R: Sequence) -> Matrix:
    """``Ric_nm = sum_i R^i_inm``."""
    n = len(R)
    return [[sum((R[i][a][b][i] for i in range(n)), ZERO) for b in range(n)] for a in range(n)]


def ricci_operator(M: Metric, Ric: Matrix) -> Matrix:
    """``g^{-1} Ric``."""
    return matmul(M.ginv, Ric)


def scalar_curvature(M: Metric, Ric: Matrix) -> Scalar:
    n = M.dim
    total = ZERO
    for i in range(n):
        for j in range(n):
            if M.ginv[i][j] and Ric[i][j]:
                total += M.ginv[i][j] * Ric[i][j]
    return total


def einstein_constant(M: Metric, Ric: Matrix):
    """The c with ``Ric = c g``, or None if no such scalar exists."""
    n = M.dim
    ref = next(((i, j) for i in range(n) for j in range(n) if M.g[i][j]), None)
    if ref is None:
        return ZERO if all(not x for row in Ric for x in row) else None
    c = Ric[ref[0]][ref[1]] / M.g[ref[0]][ref[1]]
    for i in range(n):
        for j in range(n):
            if Ric[i][j] != c * M.g[i][j]:
                return None
    return c


def is_einstein(M: Metric, Ric: Matrix) -> bool:
    return einstein_constant(M, Ric) is not None


def lowered_riemann(M: Metric, R: Sequence) -> list:
    """``R_ijkl = g(R(e_i, e_j) e_k, e_l)``."""
    n = M.dim
    out = [[[[ZERO] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    total = ZERO
                    for s in range(n):
                        if R[i][j][k][s] and M.g[s][l]:
                            total += R[i][j][k][s] * M.g[s][l]
                    out[i][j][k][l] = total
    return out


# -- identities used as oracles ---------------------------------------------


def torsion_defect(L: LieAlg, gamma: Sequence) -> list[tuple[int, int, int]]:
    """Index triples (1-based) where ``Gamma^k_ij - Gamma^k_ji != C^k_ij``."""
    n = L.dim
    return [
        (i + 1, j + 1, k + 1)
        for i in range(n)
        for j in range(n)
        for k in range(n)
        if gamma[i][j][k] - gamma[j][i][k] != L.C[i][j][k]
    ]


def metricity_defect(M: Metric, gamma: Sequence) -> list[tuple[int, int, int]]:
    """Triples where ``g(nabla_k e_i, e_j) + g(e_i, nabla_k e_j) != 0``."""
    n = M.dim
    g = M.g
    bad = []
    for k in range(n):
        for i in range(n):
            for j in range(n):
                total = ZERO
                for l in range(n):
                    total += gamma[k][i][l] * g[l][j] + gamma[k][j][l] * g[i][l]
                if total:
                    bad.append((k + 1, i + 1, j + 1))
    return bad


# -- signature at sample points ---------------------------------------------


def retry_budget() -> int:
    value = os.environ.get("STABLEFORMS_RETRY_BUDGET")
    return int(value) if value else DEFAULT_RETRY_BUDGET


def matrix_symbols(m: Matrix) -> list[str]:
    used: set[str] = set()
    for row in m:
        for x in row:
            used |= free_symbols(x)
    order = symbol_names(FIELD)
    return [s for s in order if s in used]


def evaluate_matrix(m: Matrix, point: Mapping[str, Fraction]) -> list[list[Fraction]]:
    return [[evaluate(x, point) for x in row] for row in m]


def base_point(names: Sequence[str], index: int = 0) -> dict[str, Fraction]:
    """Deterministic generic point number ``index``.

    Point 0 assigns the primes 2, 3, 5, ... to ``a12, a13, ...`` in
    canonical order (symbols not listed keep their slot); later points
    shift along the prime sequence.
    """
    order = symbol_names(FIELD)
    return {name: Fraction(PRIMES[(order.index(name) + index) % len(PRIMES)]) for name in names}


def signature_at(M: Metric, point: Mapping[str, Fraction]) -> tuple[int, int]:
    """Exact inertia ``(n_plus, n_minus)`` of g at a rational point."""
    values = evaluate_matrix(M.g, point)
    plus, minus, zero = inertia(values)
    if zero:
        raise DegeneratePoint("metric is degenerate at the sample point")
    return plus, minus


def generic_signature(M: Metric, index: int = 0, budget: int | None = None) -> tuple[tuple[int, int], dict]:
    """Signature at generic point ``index``, retrying on poles or degeneracy.

    Each retry perturbs the last symbol (canonical order) by +1.
    """
    budget = retry_budget() if budget is None else budget
    names = matrix_symbols(M.g)
    point = base_point(names, index)
    for _ in range(budget + 1):
        try:
            return signature_at(M, point), point
        except (PoleAtPoint, DegeneratePoint):
            if not names:
                break
            point[names[-1]] += 1
    raise DegeneratePoint(f"no regular sample point after {budget} retries")


def signatures(M: Metric, count: int = 3) -> list[tuple[int, int]]:
    return [generic_signature(M, k)[0] for k in range(count)]


@dataclass
class CurvatureReport:
    metric: Metric
    gamma: list
    riemann: list
    ricci: Matrix
    ricci_op: Matrix
    scalar: Scalar
    einstein: bool
    signature: tuple[int, int] | None = None
    signatures: list = field(default_factory=list)
    sample_points: list = field(default_factory=list)


def curvature_report(
    L: LieAlg,
    M: Metric,
    sample_point: Mapping[str, Fraction] | None = None,
    samples: int = 3,
) -> CurvatureReport:
    gamma = christoffel(L, M)
    R = riemann(L, gamma)
    Ric = ricci(R)
    report = CurvatureReport(
        metric=M,
        gamma=gamma,
        riemann=R,
        ricci=Ric,
        ricci_op=ricci_operator(M, Ric),
        scalar=scalar_curvature(M, Ric),
        einstein=is_einstein(M, Ric),
    )
    if sample_point is not None:
        report.signatures = [signature_at(M, sample_point)]
        report.sample_points = [dict(sample_point)]
    else:
        for k in range(samples):
            sig, point = generic_signature(M, k)
            report.signatures.append(sig)
            report.sample_points.append(point)
    if len(set(report.signatures)) == 1:
        report.signature = report.signatures[0]
    return report


def ricci_trace_check(M: Metric, Ric: Matrix) -> bool:
    """Scalar curvature computed two ways agrees."""
    return scalar_curvature(M, Ric) == trace(ricci_operator(M, Ric))
