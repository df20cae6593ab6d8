from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

import oracles
from stableforms.catalog import SCENARIOS, algebra, get_scenario
from stableforms.errors import DegreeMismatch, NonSquareLambda, NotParaComplex, UnstableForm
from stableforms.exterior import Form, cediff, parse_form, pullback, substitute, wedge
from stableforms.lie_algebra import basis_vector
from stableforms.linalg import Subspace, diag, identity, matmul, scale, trace
from stableforms.scalars import ONE, ZERO, constant_value, parse_scalar, to_scalar
from stableforms.stable_forms import (
    bracket_closed,
    bracket_witness,
    dual_form,
    eigen_distributions,
    eps_structure,
    hitchin_K,
    hitchin_lambda,
    is_integrable,
    iso_lambda5,
    nijenhuis,
    omega_pullback_sign,
    pair_report,
    square_check,
)

F = parse_form
P = parse_scalar
TRIPLES = list(combinations(range(1, 7), 3))


def sdiag(text: str):
    return diag([P(x) for x in text.split(",")])


def scenario_forms(sid: str):
    sc = get_scenario(sid)
    omega = F(sc.omega)
    if sc.case:
        omega = substitute(omega, {k: P(v) for k, v in sc.case})
    L = algebra(sc.algebra)
    return L, omega, cediff(L, omega)


def span(*vectors: str) -> Subspace:
    return Subspace([[F(v, degree=1)[(k,)] for k in range(1, 7)] for v in vectors], 6)


rational_three_forms = st.lists(
    st.tuples(st.sampled_from(TRIPLES), st.integers(-3, 3)), min_size=1, max_size=6
).map(lambda items: Form(6, 3, dict(items)))


# -- iso_lambda5 / K / lambda -----------------------------------------------


def test_iso_lambda5_examples():
    assert iso_lambda5(F("e23456")) == basis_vector(6, 1)
    assert iso_lambda5(F("-e12356")) == basis_vector(6, 4)
    assert iso_lambda5(Form.zero(6, 5)) == [ZERO] * 6
    with pytest.raises(DegreeMismatch):
        iso_lambda5(F("e1234"))


def test_K_of_split_form():
    assert hitchin_K(F("e123 + e456")) == sdiag("1,1,1,-1,-1,-1")
    assert hitchin_lambda(F("e123 + e456")) == ONE


def test_K_of_g2_and_g1():
    _, _, d2 = scenario_forms("g2_main")
    assert hitchin_K(d2) == sdiag("-a46^2, a46^2, -a46^2, a46^2, a46^2, -a46^2")
    _, _, d1 = scenario_forms("g1_opt1")
    assert hitchin_K(d1) == SCENARIOS["g1_opt1"].K()


def test_lambda_examples():
    _, _, d1 = scenario_forms("g1_opt1")
    assert hitchin_lambda(d1) == P("a46^4")
    L = algebra("g1")
    opt2 = cediff(L, F(SCENARIOS["g1_opt2_case1"].omega))
    assert hitchin_lambda(opt2) == P("a46^4 - 4*a46*a45*a56^2")
    assert hitchin_lambda(Form.zero(6, 3)) == ZERO


def test_K_rejects_wrong_degree():
    with pytest.raises(DegreeMismatch):
        hitchin_K(F("e12"))


# -- eps structures ---------------------------------------------------------


def test_eps_structure_examples():
    S = eps_structure(scenario_forms("g2_main")[2])
    assert S.eps == 1 and S.J == sdiag("-1,1,-1,1,1,-1")
    S = eps_structure(scenario_forms("g5_main")[2])
    assert S.J == sdiag("1,1,-1,-1,-1,1")
    S = eps_structure(scenario_forms("g1_opt2_case1")[2])
    assert S.eps == -1 and S.lam == -ONE
    assert matmul(S.J, S.J) == scale(-ONE, identity(6))
    assert S.J == SCENARIOS["g1_opt2_case1"].J()


def test_eps_structure_errors():
    with pytest.raises(UnstableForm):
        eps_structure(F("e123"))
    opt2 = cediff(algebra("g1"), F(SCENARIOS["g1_opt2_case1"].omega))
    with pytest.raises(NonSquareLambda):
        eps_structure(opt2)
    with pytest.raises(ValueError):
        eps_structure(F("e123 + e456"), root=to_scalar(2))


def test_explicit_root_chooses_branch():
    Omega = F("a46*e123 + e456")
    S_pos = eps_structure(Omega, root=P("a46"))
    S_neg = eps_structure(Omega, root=P("-a46"))
    assert S_neg.J == scale(-ONE, S_pos.J)
    assert square_check(S_pos) and square_check(S_neg)


def test_dual_form_examples():
    Omega = F("e123 + e456")
    assert dual_form(Omega) == F("e123 - e456")
    d2 = scenario_forms("g2_main")[2]
    assert dual_form(dual_form(d2)) == -d2
    S = eps_structure(d2)
    assert eps_structure(dual_form(d2, S)).J == scale(-ONE, S.J)


def test_pair_report_examples():
    r = pair_report(algebra("abelian6"), F("e14 + e25 + e36"), F("e123 + e456"))
    assert r.compatible and r.half_flat
    r = pair_report(algebra("abelian6"), F("e12"), F("e345"))
    assert not r.compatible
    with pytest.raises(UnstableForm):
        pair_report(algebra("abelian6"), F("e12"), F("e345"), require_normalized=True)


@pytest.mark.parametrize("sid", sorted(SCENARIOS))
def test_catalog_pairs_are_compatible_and_half_flat(sid):
    L, omega, d_omega = scenario_forms(sid)
    r = pair_report(L, omega, d_omega)
    assert r.compatible and r.half_flat


# -- eigen-distributions, brackets, Nijenhuis -------------------------------


def test_eigen_distribution_examples():
    S = eps_structure(scenario_forms("g2_main")[2])
    plus, minus = eigen_distributions(S)
    assert plus == span("e2", "e4", "e5") and minus == span("e1", "e3", "e6")
    S = eps_structure(scenario_forms("g1_opt1")[2])
    plus, _ = eigen_distributions(S)
    assert plus == span("a56^3*e1 - a56*a46^2*e3 + a46^3*e4", "-a56*e1 + a46*e2", "e5")
    S = eps_structure(scenario_forms("g4_general")[2], root=P("a46^2 - a56^2"))
    spaces = eigen_distributions(S)
    assert span("a56*e1 + a46*e3", "e4", "e5") in spaces


def test_eigen_distributions_need_para_complex():
    S = eps_structure(scenario_forms("g1_opt2_case1")[2])
    with pytest.raises(NotParaComplex):
        eigen_distributions(S)


def test_bracket_closure_examples():
    g2, g5 = algebra("g2"), algebra("g5")
    u, v, w = bracket_witness(g2, span("e2", "e4", "e5"))
    assert w == [-x for x in basis_vector(6, 6)]
    assert not bracket_closed(g5, span("e3", "e4", "e5"))
    _, _, w = bracket_witness(g5, span("e3", "e4", "e5"))
    assert w == basis_vector(6, 6)
    assert bracket_closed(g5, span("e6"))


def test_nijenhuis_examples():
    g2 = algebra("g2")
    S = eps_structure(scenario_forms("g2_main")[2])
    N = nijenhuis(g2, S)
    assert (2, 5) in N
    S_ab = eps_structure(F("e123 + e456"))
    assert is_integrable(algebra("abelian6"), S_ab)


@pytest.mark.parametrize("sid", sorted(SCENARIOS))
def test_catalog_structures(sid):
    L, omega, d_omega = scenario_forms(sid)
    root = P(SCENARIOS[sid].branches[0].root)
    S = eps_structure(d_omega, root=root)
    assert square_check(S)
    assert omega_pullback_sign(omega, S.J) == -S.eps
    assert not is_integrable(L, S)
    assert dual_form(dual_form(d_omega, S)) == -d_omega
    if S.eps == 1:
        plus, minus = eigen_distributions(S)
        assert plus.dim == minus.dim == 3
        assert not bracket_closed(L, plus) and not bracket_closed(L, minus)


# -- properties -------------------------------------------------------------


@settings(max_examples=100)
@given(rational_three_forms)
def test_K_matches_levi_civita_oracle(Omega):
    K = hitchin_K(Omega)
    lam = hitchin_lambda(Omega, K)
    assert trace(K) == ZERO
    assert matmul(K, K) == scale(lam, identity(6))
    ref = oracles.hitchin_K({idx: int(constant_value(c)) for idx, c in Omega.terms()})
    assert ref == sympy.Matrix(6, 6, lambda i, j: sympy.Rational(str(constant_value(K[i][j]))))


@given(rational_three_forms, st.sampled_from([2, -1, Fraction(1, 2)]))
def test_scaling(Omega, c):
    cs = to_scalar(c)
    assert hitchin_lambda(Omega * cs) == cs**4 * hitchin_lambda(Omega)
    assert hitchin_K(Omega * cs) == scale(cs**2, hitchin_K(Omega))


@given(rational_three_forms)
def test_K_equivariance(Omega):
    # K of the pulled-back form is the conjugated K (for a unimodular swap
    # the volume form changes sign, which enters squared)
    swap = [[ONE if (i, j) in {(0, 1), (1, 0)} or (i == j and i > 1) else ZERO for j in range(6)] for i in range(6)]
    K = hitchin_K(Omega)
    assert hitchin_K(pullback(Omega, swap)) == scale(-ONE, matmul(matmul(swap, K), swap))


def test_symbolic_K_identities():
    Omega = Form(6, 3, {idx: P(f"a{idx[0]}{idx[1]}*a{idx[1]}{idx[2]}") for idx in TRIPLES[:8]})
    K = hitchin_K(Omega)
    assert trace(K) == ZERO
    assert matmul(K, K) == scale(hitchin_lambda(Omega, K), identity(6))
    assert wedge(Omega, Omega).is_zero()
