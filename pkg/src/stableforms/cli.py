"""Command line front end.

    stableforms parse "(0,0,12,13,14+23,34-25)"
    stableforms analyze --algebra g2 --omega "a12*e12 + a46*e46" --subs a14=0
    stableforms scenario list
    stableforms scenario run g5_main --format json

Exit codes: 0 ok, 2 syntax or usage error, 3 arithmetic failure,
4 scenario mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from typing import Sequence

from . import catalog
from .curvature import associated_metric, curvature_report, generic_signature, retry_budget, signature_at
from .errors import ArithmeticFailure, ExpressionSyntaxError, NonSquareLambda, StableFormsError, UnknownScenario
from .exterior import Form, cediff, format_form, parse_form, substitute
from .lie_algebra import LieAlg, derived_series, is_nilpotent, jacobi_defect, lower_central_series, nilpotency_step, parse_tuple, series_dims
from .linalg import format_matrix
from .scalars import format_scalar, parse_point, parse_scalar, parse_substitutions
from .stable_forms import eigen_distributions, eps_structure, hitchin_K, hitchin_lambda, nijenhuis, pair_report

SCHEMA = "stableforms/1"

EXIT_OK = 0
EXIT_SYNTAX = 2
EXIT_ARITHMETIC = 3
EXIT_MISMATCH = 4


class StageError(Exception):
    def __init__(self, stage: str, error: Exception):
        super().__init__(f"{stage}: {type(error).__name__}: {error}")
        self.stage = stage
        self.error = error
        self.partial: dict | None = None


@contextmanager
def stage(name: str):
    try:
        yield
    except ArithmeticFailure as exc:
        raise StageError(name, exc) from exc


# -- report fragments -------------------------------------------------------


def algebra_echo(L: LieAlg) -> dict:
    step = nilpotency_step(L)
    return {
        "dim": L.dim,
        "brackets": L.describe_brackets(),
        "differentials": [format_form(cediff(L, Form.basis(L.dim, k))) for k in range(1, L.dim + 1)],
        "jacobi": not jacobi_defect(L),
        "lower_central_dims": series_dims(lower_central_series(L)),
        "derived_dims": series_dims(derived_series(L)),
        "nilpotent": is_nilpotent(L),
        "step": step,
    }


def _vectors(W) -> list[list[str]]:
    return [[format_scalar(x) for x in v] for v in W.basis]


def analyze(L: LieAlg, omega: Form, subs=None, point=None, root=None, report: dict | None = None) -> dict:
    """Full pipeline on ``omega``; arithmetic failures carry the stage name.

    ``report`` is filled in place, so a caller catching ``StageError`` still
    holds everything computed before the failing stage.
    """
    report = {} if report is None else report
    report["algebra"] = algebra_echo(L)
    if subs:
        with stage("substitution"):
            omega = substitute(omega, subs)
    report["omega"] = format_form(omega)
    with stage("differential"):
        d_omega = cediff(L, omega)
    report["d_omega"] = format_form(d_omega)
    with stage("hitchin"):
        K = hitchin_K(d_omega)
        lam = hitchin_lambda(d_omega, K)
    report["K"] = format_matrix(K)
    report["lambda"] = format_scalar(lam)
    with stage("pair checks"):
        pairs = pair_report(L, omega, d_omega)
    report["pair"] = {"compatible": pairs.compatible, "normalized": pairs.normalized, "half_flat": pairs.half_flat}
    try:
        with stage("structure"):
            S = eps_structure(d_omega, root=root)
    except StageError as exc:
        if not isinstance(exc.error, NonSquareLambda):
            raise
        report["epsilon"] = None
        report["J_or_P"] = {"formal": "K/sqrt(|lambda|)", "K": report["K"], "lambda": report["lambda"]}
        report["skipped"] = str(exc.error)
        for key in ("eigenbases", "nijenhuis_zero", "metric", "ricci", "ricci_operator", "scalar_curvature", "signature"):
            report[key] = None
        return report
    report["epsilon"] = S.eps
    report["structure"] = S.kind
    report["sqrt_abs_lambda"] = format_scalar(S.root)
    report["J_or_P"] = format_matrix(S.J)
    if S.eps == 1:
        plus, minus = eigen_distributions(S)
        report["eigenbases"] = {"plus": _vectors(plus), "minus": _vectors(minus)}
    else:
        report["eigenbases"] = None
    report["nijenhuis_zero"] = not nijenhuis(L, S)
    with stage("metric"):
        M = associated_metric(omega, S)
    report["metric"] = format_matrix(M.g)
    with stage("curvature"):
        rep = curvature_report(L, M, samples=0)
    report["ricci"] = format_matrix(rep.ricci)
    report["ricci_operator"] = format_matrix(rep.ricci_op)
    report["scalar_curvature"] = format_scalar(rep.scalar)
    report["einstein"] = rep.einstein
    with stage("signature"):
        if point is not None:
            sigs, points = [signature_at(M, point)], [point]
        else:
            found = [generic_signature(M, k) for k in range(3)]
            sigs, points = [s for s, _ in found], [p for _, p in found]
    report["signatures"] = [list(s) for s in sigs]
    report["sample_points"] = [{k: str(v) for k, v in sorted(p.items())} for p in points]
    report["signature"] = list(sigs[0]) if all(s == sigs[0] for s in sigs) else None
    report["retry_budget"] = retry_budget()
    return report


def scenario_report(report: catalog.ScenarioReport) -> dict:
    return {
        "id": report.id,
        "ok": report.ok,
        "comparisons": [c.as_dict() for c in report.comparisons],
        "data": report.data,
    }


# -- output -----------------------------------------------------------------


def emit(payload: dict, fmt: str, out) -> None:
    payload = dict(payload, schema=SCHEMA)
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        for line in _text_lines(payload):
            out.write(line + "\n")


def _text_lines(payload: dict, indent: str = "") -> list[str]:
    lines = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_text_lines(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{indent}{key}:")
            for row in value:
                lines.append(f"{indent}  [" + ", ".join(str(x) for x in row) + "]")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines.append(f"{indent}  - " + "; ".join(f"{k}={item[k]}" for k in sorted(item)))
        elif isinstance(value, list):
            lines.append(f"{indent}{key}: [" + ", ".join(str(x) for x in value) + "]")
        elif isinstance(value, bool):
            lines.append(f"{indent}{key}: {'true' if value else 'false'}")
        else:
            lines.append(f"{indent}{key}: {'null' if value is None else value}")
    return lines


# -- commands ---------------------------------------------------------------


def _detect_kind(text: str) -> str:
    t = text.strip()
    if t.startswith("(") and "," in t and all(ch in "0123456789+-*(), \t" for ch in t):
        return "tuple"
    if any(tok.startswith("e") for tok in t.replace("*", " ").replace("+", " ").replace("-", " ").split()):
        return "form"
    return "scalar"


def cmd_parse(args) -> dict:
    kind = args.kind if args.kind != "auto" else _detect_kind(args.text)
    if kind == "tuple":
        return {"command": "parse", "kind": "tuple", "algebra": algebra_echo(parse_tuple(args.text))}
    if kind == "form":
        f = parse_form(args.text, dim=args.dim)
        return {"command": "parse", "kind": "form", "dim": f.dim, "degree": f.degree, "form": format_form(f)}
    x = parse_scalar(args.text)
    return {"command": "parse", "kind": "scalar", "scalar": format_scalar(x)}


def cmd_analyze(args) -> dict:
    L = catalog.resolve_algebra(args.algebra)
    omega = parse_form(args.omega, dim=L.dim, degree=2)
    subs = parse_substitutions(args.subs or [])
    point = parse_point(args.sample_point) if args.sample_point else None
    root = parse_scalar(args.root) if args.root else None
    report: dict = {"command": "analyze"}
    try:
        return analyze(L, omega, subs, point, root, report)
    except StageError as exc:
        report["error"] = {"stage": exc.stage, "type": type(exc.error).__name__, "message": str(exc.error)}
        exc.partial = report
        raise


def cmd_scenario_list(args) -> dict:
    items = []
    for sid in catalog.list_scenarios():
        sc = catalog.SCENARIOS.get(sid)
        items.append({"id": sid, "description": sc.description if sc else "closed 2-forms: family and degeneracy"})
    return {"command": "scenario list", "scenarios": items}


def cmd_scenario_run(args) -> tuple[dict, catalog.ScenarioReport]:
    subs = parse_substitutions(args.subs or [])
    point = parse_point(args.sample_point) if args.sample_point else None
    with stage(f"scenario {args.id}"):
        report = catalog.run_scenario(args.id, subs, sample_point=point)
    return dict(scenario_report(report), command="scenario run"), report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stableforms", description="Stable forms on nilpotent Lie algebras")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[fmt], help="parse a tuple, form or scalar literal")
    p.add_argument("text")
    p.add_argument("--kind", choices=("auto", "tuple", "form", "scalar"), default="auto")
    p.add_argument("--dim", type=int, default=6)
    p.set_defaults(handler=cmd_parse)

    a = sub.add_parser("analyze", parents=[fmt], help="run the pipeline on a 2-form")
    a.add_argument("--algebra", required=True, help="g1..g5, abelian6 or tuple notation")
    a.add_argument("--omega", required=True)
    a.add_argument("--subs", action="append", metavar="NAME=VALUE")
    a.add_argument("--sample-point", action="append", metavar="NAME=RATIONAL")
    a.add_argument("--root", help="explicit sqrt|lambda| (picks the sign branch)")
    a.set_defaults(handler=cmd_analyze)

    s = sub.add_parser("scenario", help="catalog scenarios")
    ssub = s.add_subparsers(dest="action", required=True)
    sl = ssub.add_parser("list", parents=[fmt])
    sl.set_defaults(handler=cmd_scenario_list)
    sr = ssub.add_parser("run", parents=[fmt])
    sr.add_argument("id")
    sr.add_argument("--subs", action="append", metavar="NAME=VALUE")
    sr.add_argument("--sample-point", action="append", metavar="NAME=RATIONAL")
    sr.set_defaults(handler=cmd_scenario_run)
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    try:
        result = args.handler(args)
    except ExpressionSyntaxError as exc:
        err.write(f"stableforms: syntax error: {type(exc).__name__}: {exc}\n")
        return EXIT_SYNTAX
    except UnknownScenario as exc:
        err.write(f"stableforms: UnknownScenario: {exc}\n")
        return EXIT_SYNTAX
    except StageError as exc:
        if exc.partial is not None:
            emit(exc.partial, args.format, out)
        err.write(f"stableforms: arithmetic failure in stage {exc}\n")
        return EXIT_ARITHMETIC
    except ArithmeticFailure as exc:
        err.write(f"stableforms: arithmetic failure: {type(exc).__name__}: {exc}\n")
        return EXIT_ARITHMETIC
    except (StableFormsError, ValueError) as exc:
        err.write(f"stableforms: {type(exc).__name__}: {exc}\n")
        return EXIT_SYNTAX
    if isinstance(result, tuple):
        payload, report = result
        emit(payload, args.format, out)
        bad = report.mismatches()
        if bad:
            first = bad[0]
            err.write(
                f"stableforms: {len(bad)} mismatch(es); first: {first.item}: expected {first.expected}, got {first.actual}\n"
            )
            return EXIT_MISMATCH
        return EXIT_OK
    emit(result, args.format, out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
