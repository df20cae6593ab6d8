"""Exact computations with Hitchin's stable 3-forms on six-dimensional
nilpotent Lie algebras: Chevalley-Eilenberg differentials, epsilon-complex
structures, associated pseudo-Riemannian metrics and their curvature."""

from __future__ import annotations

from .catalog import algebra, list_scenarios, run_scenario
from .curvature import associated_metric, curvature_report
from .exterior import Form, cediff, format_form, parse_form, wedge
from .lie_algebra import LieAlg, from_brackets, parse_tuple
from .scalars import FIELD, format_scalar, parse_scalar
from .stable_forms import eps_structure, hitchin_K, hitchin_lambda

__all__ = [
    "FIELD",
    "Form",
    "LieAlg",
    "algebra",
    "associated_metric",
    "cediff",
    "curvature_report",
    "eps_structure",
    "format_form",
    "format_scalar",
    "from_brackets",
    "hitchin_K",
    "hitchin_lambda",
    "list_scenarios",
    "parse_form",
    "parse_scalar",
    "parse_tuple",
    "run_scenario",
    "wedge",
]
