"""Exact rationals and their canonical string form.

Rationals are plain :class:`fractions.Fraction` values.  The only extra
machinery here is the canonical text encoding used in every report, which is
``"p/q"`` with ``q > 0`` and ``gcd(p, q) == 1``.
"""
from __future__ import annotations

import re
from fractions import Fraction

Rat = Fraction

_CANON = re.compile(r"^(-?)(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?$")


class RationalFormatError(ValueError):
    """Raised for rational strings that are malformed or not in lowest terms."""


def parse_rat(text) -> Fraction:
    """Parse a canonical rational string such as ``"3/4"``, ``"-2/1"`` or ``"5"``.

    Non-canonical spellings (``"2/4"``, ``"1/-2"``, ``"+1"``, ``"-0"``,
    whitespace) are rejected so that every stored value has exactly one
    textual form.
    """
    if isinstance(text, bool):
        raise RationalFormatError(f"expected a rational string, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise RationalFormatError(f"expected a rational string, got {text!r}")
    m = _CANON.match(text)
    if m is None:
        raise RationalFormatError(f"malformed rational {text!r}")
    sign, num, den = m.groups()
    p, q = int(num), int(den) if den else 1
    if sign and p == 0:
        raise RationalFormatError(f"non-canonical rational {text!r} (negative zero)")
    value = Fraction(-p if sign else p, q)
    if value.denominator != q:
        raise RationalFormatError(f"non-canonical rational {text!r} (not in lowest terms)")
    return value


def format_rat(value) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def as_rat(value) -> Fraction:
    """Coerce ints, Fractions and canonical strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rat(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")
