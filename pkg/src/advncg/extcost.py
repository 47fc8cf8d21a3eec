"""Exact extended costs: a ``Fraction`` or ``INF``.

``INF`` is ``math.inf``.  Comparisons between a ``Fraction`` and an infinite
float are exact in CPython (no conversion of the finite side happens), and
``Fraction + inf`` is ``inf``, so the two arms mix without special casing.
Never multiply ``INF`` by zero.  Adding ``INF`` to a finite value converts that
value to float, so finite costs must stay below about 1e308.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Union

INF = math.inf
ExtCost = Union[Fraction, float]


def is_inf(x) -> bool:
    return isinstance(x, float) and math.isinf(x)


def parse_rational(text) -> Fraction:
    """Parse ``p/q``, an integer, or a finite decimal (``10.3`` -> 103/10) exactly."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise TypeError("floats are not accepted; pass a string or Fraction")
    try:
        value = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc
    return value


def parse_alpha(text) -> Fraction:
    value = parse_rational(text)
    if value < 0:
        raise ValueError(f"edge price must be nonnegative, got {value}")
    return value


def format_exact(x) -> str:
    """``p/q`` in lowest terms (always with a denominator), or ``inf``."""
    if is_inf(x):
        return "inf"
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def format_decimal(x, digits: int = 12) -> str:
    if is_inf(x):
        return "inf"
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return format(d.normalize(), "f") if abs(d) < Decimal(10) ** digits else str(d)
