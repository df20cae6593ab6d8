"""Exact scalars: the rational function field Q(a12, ..., a56).

Every coefficient in the library is an element of ``FIELD``, a sympy
fraction field over QQ with generators ``a12, a13, ..., a56`` (row-major
over index pairs ``i < j``) and graded lexicographic term order.  Field
elements are kept in canonical form by sympy (numerator and denominator
coprime, integral content removed, denominator with positive leading
coefficient), so ``==`` on scalars is equality in the field.

Exact rationals that leave the field (evaluation at points, inertia
computations) are ``fractions.Fraction``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, FracField, field
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement

from .errors import DivisionByZero, ExpressionSyntaxError, PoleAtPoint

Scalar = FracElement
Number = Union[int, Fraction]

STANDARD_SYMBOLS: tuple[str, ...] = tuple(
    f"a{i}{j}" for i in range(1, 7) for j in range(i + 1, 7)
)


def _make_field(names: Iterable[str]) -> FracField:
    fld, *_ = field(",".join(names), QQ, grlex)
    return fld


FIELD: FracField = _make_field(STANDARD_SYMBOLS)
ZERO: Scalar = FIELD.zero
ONE: Scalar = FIELD.one


@lru_cache(maxsize=None)
def extended_field(extra: tuple[str, ...]) -> FracField:
    """Field with user-declared symbols appended after the standard ones.

    Scalars from different fields do not mix; parse with ``field=`` to get
    elements of the extended field.
    """
    for name in extra:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name) or name in STANDARD_SYMBOLS:
            raise ValueError(f"invalid extra symbol {name!r}")
    return _make_field(STANDARD_SYMBOLS + tuple(extra))


def symbol_names(fld: FracField = FIELD) -> tuple[str, ...]:
    return tuple(str(s) for s in fld.symbols)


def symbol(name: str, fld: FracField = FIELD) -> Scalar:
    names = symbol_names(fld)
    try:
        return fld.gens[names.index(name)]
    except ValueError:
        raise KeyError(f"unknown symbol {name!r}") from None


def to_qq(value):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ(value)


def to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def to_scalar(value, fld: FracField = FIELD) -> Scalar:
    """Coerce ints, Fractions, literals and field elements into ``fld``."""
    if isinstance(value, FracElement):
        if value.field is not fld:
            raise TypeError("scalar belongs to a different field")
        return value
    if isinstance(value, PolyElement):
        return fld.new(value.set_ring(fld.ring))
    if isinstance(value, str):
        return parse_scalar(value, fld)
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, (int, Fraction)):
        return fld(to_qq(value))
    raise TypeError(f"cannot convert {type(value).__name__} to a scalar")


def normalize(num, den=1, fld: FracField = FIELD) -> Scalar:
    """Canonical representative of ``num/den``.

    Accepts scalars, polynomials or numbers for either part; the result is
    gcd-reduced with a sign-normalized denominator.  Idempotent.
    """
    n = to_scalar(num, fld)
    d = to_scalar(den, fld)
    if not d:
        raise DivisionByZero("zero denominator")
    return n / d


def divide(x: Scalar, y: Scalar) -> Scalar:
    if not y:
        raise DivisionByZero(f"division of {format_scalar(x)} by zero")
    return x / y


def is_constant(x: Scalar) -> bool:
    return x.numer.is_ground and x.denom.is_ground


def constant_value(x: Scalar) -> Fraction:
    if not is_constant(x):
        raise ValueError(f"{format_scalar(x)} is not a constant")
    return to_fraction(QQ(x.numer.LC) / QQ(x.denom.LC)) if x else Fraction(0)


def free_symbols(x: Scalar) -> set[str]:
    """Names of generators that actually occur in ``x``."""
    names = symbol_names(x.field)
    used = set()
    for poly in (x.numer, x.denom):
        for monom in poly.monoms():
            used.update(names[k] for k, e in enumerate(monom) if e)
    return used


def _poly_map(poly: PolyElement, images: list, one):
    """Evaluate ``poly`` with generator k replaced by ``images[k]``."""
    powers: dict[tuple[int, int], object] = {}
    total = None
    for monom, coeff in poly.terms():
        term = one * coeff
        for k, e in enumerate(monom):
            if e:
                key = (k, e)
                if key not in powers:
                    img = images[k]
                    if img is None:
                        raise ValueError(f"no value for symbol {poly.ring.symbols[k]}")
                    powers[key] = img**e
                term = term * powers[key]
        total = term if total is None else total + term
    return one * 0 if total is None else total


def substitute(x: Scalar, subs: Mapping[str, object]) -> Scalar:
    """Replace symbols by scalars (or numbers / literals) and re-normalize."""
    if not subs:
        return x
    fld = x.field
    images = list(fld.gens)
    names = symbol_names(fld)
    for name, value in subs.items():
        images[names.index(name)] = to_scalar(value, fld)
    num = _poly_map(x.numer, images, fld.one)
    den = _poly_map(x.denom, images, fld.one)
    if not den:
        raise PoleAtPoint(f"denominator of {format_scalar(x)} vanishes under substitution")
    return num / den


def evaluate(x: Scalar, point: Mapping[str, Number]) -> Fraction:
    """Exact value of ``x`` at a rational point.

    ``point`` must assign every symbol occurring in ``x``.
    """
    names = symbol_names(x.field)
    images = [None] * len(names)
    for name, value in point.items():
        if name in names:
            images[names.index(name)] = to_qq(value)
    num = _poly_map(x.numer, images, QQ.one)
    den = _poly_map(x.denom, images, QQ.one)
    if not den:
        raise PoleAtPoint(f"{format_scalar(x)} has a pole at the given point")
    return to_fraction(num / den)


def _square_root_poly(poly: PolyElement):
    if not poly:
        return poly
    content, factors = poly.sqf_list()
    content = QQ(content)
    if content <= 0:
        return None
    roots = []
    for part in (content.numerator, content.denominator):
        r = _isqrt(int(part))
        if r is None:
            return None
        roots.append(r)
    root = poly.ring(QQ(roots[0], roots[1]))
    for factor, mult in factors:
        if mult % 2:
            return None
        root *= factor ** (mult // 2)
    return root


def _isqrt(n: int):
    if n < 0:
        return None
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def sqrt_exact(x: Scalar):
    """A field element ``r`` with ``r**2 == x``, or None when none exists.

    Detection goes through square-free factorization of numerator and
    denominator.  The returned root has positive content.
    """
    num = _square_root_poly(x.numer)
    den = _square_root_poly(x.denom)
    if num is None or den is None:
        return None
    return x.field.new(num) / x.field.new(den)


def sign_by_squares(x: Scalar):
    """+1 if ``x`` is a nonzero square, -1 if ``-x`` is, else None."""
    if not x:
        return None
    if sqrt_exact(x) is not None:
        return 1
    if sqrt_exact(-x) is not None:
        return -1
    return None


# -- formatting -------------------------------------------------------------


def _format_coeff(c) -> str:
    c = QQ(c)
    if c.denominator == 1:
        return str(int(c.numerator))
    return f"{int(c.numerator)}/{int(c.denominator)}"


def _format_monom(monom, names) -> str:
    parts = []
    for k, e in enumerate(monom):
        if e == 1:
            parts.append(names[k])
        elif e:
            parts.append(f"{names[k]}^{e}")
    return "*".join(parts)


def format_poly(poly: PolyElement) -> str:
    if not poly:
        return "0"
    names = [str(s) for s in poly.ring.symbols]
    out = []
    for idx, (monom, coeff) in enumerate(poly.terms()):
        coeff = QQ(coeff)
        neg = coeff < 0
        mag = -coeff if neg else coeff
        mono = _format_monom(monom, names)
        if not mono:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def _is_atomic_denominator(poly: PolyElement) -> bool:
    if len(poly) != 1:
        return False
    (monom, coeff), = poly.terms()
    if not any(monom):
        return QQ(coeff).denominator == 1
    return QQ(coeff) == 1 and sum(1 for e in monom if e) == 1


def format_scalar(x: Scalar) -> str:
    """Canonical text; ``parse_scalar(format_scalar(x)) == x``."""
    num, den = x.numer, x.denom
    num_text = format_poly(num)
    if den == 1:
        return num_text
    if len(num) > 1:
        num_text = f"({num_text})"
    den_text = format_poly(den)
    if not _is_atomic_denominator(den):
        den_text = f"({den_text})"
    return f"{num_text}/{den_text}"


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Split into (kind, value, position) with kind in num/ident/op/end."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExpressionSyntaxError(f"unexpected character {ch!r}", text, m.start(3))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class ExpressionParser:
    """Recursive-descent parser for ``+ - * / ^`` expressions.

    Subclasses extend ``atom_identifier`` and the combination hooks to
    parse richer values (see ``exterior.parse_form``).
    """

    def __init__(self, text: str, fld: FracField = FIELD):
        self.text = text
        self.field = fld
        self.names = symbol_names(fld)
        self.tokens = tokenize(text)
        self.i = 0

    def error(self, message: str, pos: int | None = None):
        if pos is None:
            pos = self.tokens[self.i][2]
        raise ExpressionSyntaxError(message, self.text, pos)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            _, op, pos = self.take()
            rhs = self.term()
            value = self.combine(op, value, rhs, pos)
        return value

    def term(self):
        value = self.factor()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            _, op, pos = self.take()
            rhs = self.factor()
            value = self.combine(op, value, rhs, pos)
        return value

    def factor(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return self.negate(self.factor())
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.factor()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            _, _, pos = self.take()
            kind, value, epos = self.take()
            if kind != "num":
                self.error("exponent must be a non-negative integer literal", epos)
            return self.raise_power(base, int(value), pos)
        return base

    def atom(self):
        kind, value, pos = self.take()
        if kind == "num":
            return self.field(int(value))
        if kind == "ident":
            return self.atom_identifier(value, pos)
        if (kind, value) == ("op", "("):
            inner = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return inner
        self.error(f"unexpected {value!r}" if kind != "end" else "unexpected end of input", pos)

    def atom_identifier(self, name: str, pos: int):
        if name not in self.names:
            self.error(f"unknown symbol {name!r}", pos)
        return self.field.gens[self.names.index(name)]

    # hooks
    def negate(self, value):
        return -value

    def raise_power(self, base, exponent: int, pos: int):
        return base**exponent

    def combine(self, op: str, lhs, rhs, pos: int):
        if op == "+":
            return lhs + rhs
        if op == "-":
            return lhs - rhs
        if op == "*":
            return lhs * rhs
        if not rhs:
            self.error("division by zero", pos)
        return lhs / rhs


def parse_scalar(text: str, fld: FracField = FIELD) -> Scalar:
    """Parse a scalar literal such as ``(a46^8+8*a56^6*a46*a14)/(8*a56^7)``."""
    return ExpressionParser(text, fld).parse()


def parse_substitutions(items: Iterable[str], fld: FracField = FIELD) -> dict[str, Scalar]:
    """Parse ``name=value`` strings (CLI ``--subs``)."""
    subs: dict[str, Scalar] = {}
    names = symbol_names(fld)
    for item in items:
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep:
            raise ExpressionSyntaxError("expected name=value", item, len(item))
        if name not in names:
            raise ExpressionSyntaxError(f"unknown symbol {name!r}", item, 0)
        subs[name] = parse_scalar(value, fld)
    return subs


def parse_point(items: Iterable[str]) -> dict[str, Fraction]:
    """Parse ``name=rational`` strings (CLI ``--sample-point``)."""
    point: dict[str, Fraction] = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise ExpressionSyntaxError("expected name=value", item, len(item))
        x = parse_scalar(value)
        if not is_constant(x):
            raise ExpressionSyntaxError("sample point values must be rational", item, len(name) + 1)
        point[name.strip()] = constant_value(x)
    return point

