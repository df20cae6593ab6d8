from __future__ import annotations

import pytest

from stableforms.catalog import (
    CLOSED_FORM_IDS,
    SCENARIOS,
    a46_branch_certificate,
    algebra,
    apply_constraints,
    g2_incompatibility_check,
    g2_incompatibility_details,
    get_scenario,
    list_scenarios,
    resolve_algebra,
    run_scenario,
    solve_linear_conditions,
    zero_locus_factors,
)
from stableforms.errors import UnknownScenario
from stableforms.exterior import cediff, generic_two_form, is_nondegenerate2, parse_form, wedge, wedge_closure_conditions
from stableforms.linalg import diag, scale
from stableforms.scalars import ZERO, parse_scalar, substitute

P = parse_scalar

# items that differ from the reference values; see the notes in each test
KNOWN_MISMATCHES = {
    "g4_general": {"scalar_curvature[+]", "scalar_curvature[-]"},
    "g4_a56zero": {"ricci_operator"},
    "g2_closed_form_degeneracy": {"stated_nondegeneracy"},
    "g5_closed_form_degeneracy": {"stated_nondegeneracy", "generic_wedge_conditions"},
}


def test_list_scenarios():
    ids = list_scenarios()
    assert len(ids) == 13 and len(set(ids)) == 13
    assert ids[:8] == [
        "g1_opt1", "g1_opt2_case1", "g1_opt2_case2", "g2_main",
        "g3_main", "g4_general", "g4_a56zero", "g5_main",
    ]
    assert set(CLOSED_FORM_IDS) <= set(ids)


def test_unknown_ids():
    with pytest.raises(UnknownScenario):
        run_scenario("nope")
    with pytest.raises(UnknownScenario):
        algebra("g9")
    assert str(UnknownScenario("unknown scenario 'x'")) == "unknown scenario 'x'"


def test_resolve_algebra():
    assert resolve_algebra("g3") == algebra("g3")
    assert resolve_algebra(" (0,0,0,0,0,0) ") == algebra("abelian6")


@pytest.mark.parametrize("sid", list_scenarios())
def test_scenario_outcome(sid):
    report = run_scenario(sid)
    assert {c.item for c in report.mismatches()} == KNOWN_MISMATCHES.get(sid, set())
    assert report.ok == (sid not in KNOWN_MISMATCHES)
    for c in report.comparisons:
        assert set(c.as_dict()) >= {"item", "expected", "actual", "match"}


@pytest.mark.parametrize("sid", sorted(SCENARIOS))
def test_scenario_invariants(sid):
    sc = get_scenario(sid)
    L = algebra(sc.algebra)
    omega = apply_constraints(parse_form(sc.family), sc.constraints + sc.case)
    assert omega == apply_constraints(parse_form(sc.omega), sc.case)
    assert wedge(omega, cediff(L, omega)).is_zero()
    ok, cert = is_nondegenerate2(omega)
    assert ok
    for factor in sc.nondegeneracy:
        assert zero_locus_factors(P(factor)) <= zero_locus_factors(cert)
    report = run_scenario(sid)
    items = {c.item: c for c in report.comparisons}
    assert all(c.match for name, c in items.items() if name.startswith(("nijenhuis_nonzero", "square", "omega_pullback")))
    assert all(c.match for name, c in items.items() if "_bracket" in name or name.startswith("eigen_ranks"))
    assert items["compatible"].match and items["half_flat"].match


def test_g1_cases_share_scalar_curvature():
    a = run_scenario("g1_opt2_case1").data["scalar_curvature"]
    b = run_scenario("g1_opt2_case2").data["scalar_curvature"]
    assert a == b


def test_g1_case2_relation_to_case1_template():
    c = run_scenario("g1_opt2_case2").get("P_vs_case1_template")
    assert c.informational and c.match


def test_zero_scalar_substitution_via_catalog():
    sub = {"a13": "(a46^8+8*a56^6*a46*a14)/(8*a56^7)"}
    report = run_scenario("g1_opt1", sub)
    assert report.ok
    assert report.data["scalar_curvature"] == "0"
    assert report.get("ricci_nonzero").match
    sub = {"a13": "(1+8*a56^6*a46*a14)/(8*a56^7)"}
    assert run_scenario("g1_opt2_case1", sub).data["scalar_curvature"] == "0"


def test_g4_general_scalar_sign():
    # both branches give -|a46^2 - a56^2| / (a13 (a24 a56 - a25 a46)); the reference
    # value has the opposite sign, which is what the metric -g would give
    report = run_scenario("g4_general")
    den = "(a13*(a24*a56 - a25*a46))"
    for tag, root in (("[+]", "a46^2 - a56^2"), ("[-]", "a56^2 - a46^2")):
        c = report.get(f"scalar_curvature{tag}")
        assert P(c.actual) == -P(f"({root})/{den}")
        assert P(c.expected) == P(f"({root})/{den}")
    for tag in ("[+]", "[-]"):
        assert report.get(f"einstein{tag}").match
        assert report.get(f"ricci_operator_nondiagonal{tag}").match


def test_g4_a56zero_ricci_operator():
    # the computed operator involves a13 (not a23) and has the opposite sign;
    # det g is proportional to (a13*a25*a46)^2, so a23 cannot appear
    report = run_scenario("g4_a56zero")
    assert not report.get("ricci_operator").match
    expected = scale(P("a46/(2*a13*a25)"), diag([P(x) for x in "1 1 1 -1 1 -1".split()]))
    subs = {"a14": ZERO, "a24": ZERO}
    assert [[substitute(P(x), subs) for x in row] for row in report.data["ricci_operator"]] == expected


def test_closed_families_are_degenerate():
    for name in ("g1", "g2", "g3", "g4", "g5"):
        report = run_scenario(f"{name}_closed_form_degeneracy")
        assert report.get("closed_family").match
        assert report.get("reference_family_closed").match
        assert report.get("summary_nondegeneracy").match
        assert report.get("generic_lambda").match
        assert report.data["omega_cubed"] == "0"


def test_g5_reference_condition_sign():
    c = run_scenario("g5_closed_form_degeneracy").get("generic_wedge_conditions")
    assert not c.match
    got = [P(x) for x in c.actual.split("; ")]
    assert any(g == P("-a34*a56 + a35*a46 - a36*a45") or g == P("a34*a56 - a35*a46 + a36*a45") for g in got)


def test_g2_incompatibility():
    assert g2_incompatibility_check()
    ok, detail = g2_incompatibility_details()
    assert ok and "omega^3 = 0" in detail
    cert = a46_branch_certificate()
    assert cert and zero_locus_factors(cert) == {"a15", "a23", "a46"}


def test_abelian_control_is_trivially_compatible():
    L = algebra("abelian6")
    assert wedge_closure_conditions(L, generic_two_form()) == []
    assert solve_linear_conditions([], ["a12"], []) == {}


def test_solver_respects_nonzero_assumptions():
    a12, a56 = P("a12"), P("a56")
    sol = solve_linear_conditions([a12 * a56 - 1], ["a12"], ["a56"])
    assert sol == {"a12": 1 / a56}
    assert solve_linear_conditions([a12 * a56 - 1], ["a12"], []) is None
    assert substitute(a12 * a56 - 1, sol) == ZERO


def test_extra_subs_and_sample_point():
    point = {n: v for n, v in zip(("a12", "a14", "a15", "a23", "a46"), (2, 5, 7, 11, 13))}
    report = run_scenario("g2_main", sample_point=point)
    assert report.get("signature").match
    assert report.data["signatures"] == [[3, 3]]
