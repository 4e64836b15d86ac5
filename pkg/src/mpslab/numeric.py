"""Exact-arithmetic helpers shared across the package.

All dollar and price arithmetic is done in ``fractions.Fraction`` so that
values like $90.64 stay exact.  Floats are accepted at the boundary and
converted through their shortest decimal repr ("4.68" -> 117/25), which is
what a user typing 4.68 means.
"""

from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, str, float, Decimal, Fraction]


def as_fraction(x: Rational) -> Fraction:
    """Convert a number-like value to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(str(x))
    if isinstance(x, (str, Decimal)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact number")


def as_fractions(xs: Iterable[Rational]) -> tuple[Fraction, ...]:
    return tuple(as_fraction(x) for x in xs)


def money_scale(values: Iterable[Fraction]) -> int:
    """Least common denominator, turning the values into exact integers."""
    scale = 1
    for v in values:
        scale = scale * v.denominator // math.gcd(scale, v.denominator)
    return scale


def scaled_ints(values: Sequence[Fraction], scale: int) -> list[int]:
    out = []
    for v in values:
        num = v.numerator * scale
        if num % v.denominator:
            raise ValueError(f"{v} does not scale to an integer by {scale}")
        out.append(num // v.denominator)
    return out


def fmt_dollars(x: Fraction) -> str:
    """Render a dollar amount, exact to the cent when it is one."""
    cents = x * 100
    if cents.denominator == 1:
        sign = "-" if cents < 0 else ""
        c = abs(cents.numerator)
        return f"{sign}{c // 100}.{c % 100:02d}"
    return repr(float(x))


def fmt_number(x) -> str:
    """Stable text form for TSV output (exact ints stay ints)."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return repr(float(x))
    if isinstance(x, float):
        return repr(x)
    return str(x)


def fmt_price(x: Fraction, delta: Fraction) -> str:
    """Quote-style price text with the decimals the grid needs (0.25 -> 2)."""
    for places in range(13):
        if (delta * 10 ** places).denominator == 1:
            break
    else:
        return repr(float(x))
    scaled = x * 10 ** places
    if scaled.denominator != 1:
        return repr(float(x))
    sign = "-" if scaled < 0 else ""
    digits = abs(scaled.numerator)
    if places == 0:
        return f"{sign}{digits}"
    return f"{sign}{digits // 10 ** places}.{digits % 10 ** places:0{places}d}"
