"""Number-domain plumbing: exact rational arithmetic vs extended-precision floats.

Every coefficient/series routine in this package is generic over a scalar
type.  ``NumberDomain`` pins that type down: ``exact_rational`` keeps each
value a :class:`fractions.Fraction` (legal only when all inputs are
rational), while ``float`` computes with mpmath reals at a configurable
number of mantissa bits.
"""

from __future__ import annotations

from contextlib import nullcontext
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath

EXACT_RATIONAL = "exact_rational"
FLOAT = "float"


@dataclass(frozen=True)
class NumberDomain:
    """Arithmetic mode used for coefficient tables and series sums."""

    mode: str = EXACT_RATIONAL
    precision_bits: int = 128

    def __post_init__(self) -> None:
        if self.mode not in (EXACT_RATIONAL, FLOAT):
            raise ValueError(f"unknown number domain mode: {self.mode!r}")
        if self.mode == FLOAT and self.precision_bits < 24:
            raise ValueError("precision_bits must be at least 24")

    @property
    def is_exact(self) -> bool:
        return self.mode == EXACT_RATIONAL

    def context(self):
        """Context manager pinning the mpmath working precision (no-op if exact)."""
        if self.is_exact:
            return nullcontext()
        return mpmath.workprec(self.precision_bits)

    def coerce(self, value):
        """Convert ``value`` to this domain's scalar type.

        Raises TypeError in exact mode for values that are not rational
        numbers; irrational inputs must use a float domain.
        """
        if self.is_exact:
            if isinstance(value, Rational):
                return Fraction(value)
            raise TypeError(
                f"exact_rational domain cannot represent {value!r}; use a float domain"
            )
        return to_mpf(value)


def exact_domain() -> NumberDomain:
    return NumberDomain(EXACT_RATIONAL)


def float_domain(precision_bits: int = 128) -> NumberDomain:
    return NumberDomain(FLOAT, precision_bits)


def to_mpf(value) -> mpmath.mpf:
    """Convert int/Fraction/float/mpf to an mpf at the current working precision."""
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    if isinstance(value, Rational) and not isinstance(value, (int, float)):
        return mpmath.mpf(int(value.numerator)) / int(value.denominator)
    return mpmath.mpf(value)


def parse_number(text: str) -> Fraction:
    """Parse a CLI/file scalar: accepts "3", "-5/2", "2.5", "1e-3"."""
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    """Serialize a rational as an explicit "p/q" string (exactness-preserving)."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"
