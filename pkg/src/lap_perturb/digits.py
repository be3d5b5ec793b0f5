"""Printed-digit comparisons: match a computed value against a reference string.

A value "matches" a printed reference iff it lies within half an ulp of the
reference's last printed digit, i.e. the reference is the correctly rounded
rendering of the value at that precision.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

import mpmath

from .domain import to_mpf

__all__ = ["printed_value", "printed_half_ulp", "matches_printed"]


def printed_value(text: str) -> Fraction:
    """Exact rational value of a printed decimal (supports exponents and p/q)."""
    return Fraction(text.strip())


def printed_half_ulp(text: str) -> Fraction:
    """Half an ulp of the last printed digit of ``text``."""
    s = text.strip().lstrip("+-")
    m = re.fullmatch(r"([0-9]*)(?:\.([0-9]*))?(?:[eE]([-+]?[0-9]+))?", s)
    if m is None:
        raise ValueError(f"not a printed decimal: {text!r}")
    frac_digits = len(m.group(2) or "")
    exponent = int(m.group(3) or 0)
    return Fraction(1, 2) * Fraction(10) ** (exponent - frac_digits)


def matches_printed(value, text: str, ulps: float = 1.0) -> bool:
    """True iff |value - printed| <= ulps * half-ulp of the last printed digit."""
    ref = printed_value(text)
    tol = printed_half_ulp(text) * Fraction(ulps)
    if isinstance(value, Rational):
        return abs(Fraction(value) - ref) <= tol
    # mpf inputs keep their own precision; difference them well above it so
    # the comparison never rounds the reference away
    with mpmath.workprec(512):
        diff = abs(to_mpf(value) - to_mpf(ref))
        return diff <= to_mpf(tol)


def assert_matches_printed(value, text: str, label: str = "", ulps: float = 1.0) -> None:
    if not matches_printed(value, text, ulps=ulps):
        shown = mpmath.nstr(to_mpf(value), len(text) + 3)
        raise AssertionError(f"{label or 'value'} = {shown} does not match printed {text!r}")
