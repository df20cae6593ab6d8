"""Exception hierarchy.

The CLI maps these onto exit codes: ``ExpressionSyntaxError`` and
``NotNilpotentOrder`` exit 2, every ``ArithmeticFailure`` exits 3.
"""

from __future__ import annotations


class StableFormsError(Exception):
    """Base class for all library errors."""


class ExpressionSyntaxError(StableFormsError, ValueError):
    """Malformed scalar, form or tuple literal."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        if text:
            message = f"{message} at position {position}: {text!r}"
        super().__init__(message)


class NotNilpotentOrder(ExpressionSyntaxError):
    """A tuple entry de^k references some e^j with j >= k."""


class IndexOutOfRange(StableFormsError, IndexError):
    pass


class DimensionMismatch(StableFormsError, ValueError):
    pass


class DegreeMismatch(StableFormsError, ValueError):
    pass


class UnknownScenario(StableFormsError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class ArithmeticFailure(StableFormsError, ArithmeticError):
    """Base for failures of exact arithmetic or of a geometric precondition."""


class DivisionByZero(ArithmeticFailure, ZeroDivisionError):
    pass


class PoleAtPoint(ArithmeticFailure):
    pass


class UnstableForm(ArithmeticFailure):
    """The 3-form has lambda = 0."""


class NonSquareLambda(ArithmeticFailure):
    """sqrt|lambda| is not an element of the coefficient field."""


class NotParaComplex(ArithmeticFailure):
    pass


class AsymmetricResult(ArithmeticFailure):
    pass


class SingularMetric(ArithmeticFailure):
    pass


class SingularMatrix(ArithmeticFailure):
    pass


class DegeneratePoint(ArithmeticFailure):
    pass
