from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from lap_perturb.domain import (
    NumberDomain,
    exact_domain,
    float_domain,
    format_rational,
    parse_number,
    to_mpf,
)
from lap_perturb.graph import build_graph
from lap_perturb.perturb import coefficients, default_domain


def test_exact_domain_rejects_irrational_inputs():
    with pytest.raises(TypeError, match="exact_rational"):
        exact_domain().coerce(0.5 ** 0.5 * 2)  # an arbitrary non-Rational float

    g = build_graph(3, [(1, 2, 0.3), (2, 3, 0.7)])
    with pytest.raises(TypeError):
        coefficients(g, 2, 4, exact_domain())


def test_default_domain_switches_on_float_weights():
    g = build_graph(3, [(1, 2, 0.3), (2, 3, 0.7)])
    domain = default_domain(g)
    assert not domain.is_exact
    table = coefficients(g, 2, 4, domain)
    assert isinstance(table.c_at(2), mpmath.mpf)


def test_mode_validation():
    with pytest.raises(ValueError, match="unknown number domain"):
        NumberDomain("decimal")
    with pytest.raises(ValueError, match="at least 24"):
        NumberDomain("float", 8)


def test_float_context_pins_precision():
    domain = float_domain(200)
    with domain.context():
        assert mpmath.mp.prec == 200


def test_parse_and_format():
    assert parse_number("-5/2") == Fraction(-5, 2)
    assert parse_number("2.5") == Fraction(5, 2)
    assert parse_number("1e-3") == Fraction(1, 1000)
    assert format_rational(Fraction(2)) == "2/1"
    assert format_rational(Fraction(-5, 2)) == "-5/2"


def test_to_mpf_is_lossless_for_fractions():
    with mpmath.workprec(100):
        x = to_mpf(Fraction(1, 3))
        assert abs(x - mpmath.mpf(1) / 3) < mpmath.mpf(2) ** -99
