from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from invsemi.dyadic import ONE, ZERO, Dyadic

dyadics = st.builds(Dyadic, st.integers(0, 10_000), st.integers(0, 20))


def frac(d: Dyadic) -> Fraction:
    return Fraction(d.numerator, 2 ** d.exponent)


def test_normal_form_and_printing():
    assert Dyadic(2, 2) == Dyadic(1, 1)
    assert str(Dyadic(2, 2)) == "1/2^1"
    assert str(Dyadic.parse("3/2^2")) == "3/2^2"
    assert Dyadic.weight(0) == Dyadic(1, 1)
    assert Dyadic.tail_weight(3) == Dyadic(1, 3)
    assert Dyadic(1, 1) + Dyadic(1, 1) == ONE


def test_subtraction_refuses_negatives():
    with pytest.raises(ValueError):
        Dyadic(1, 2) - Dyadic(1, 1)


@given(dyadics, dyadics)
def test_arithmetic_matches_fractions(a, b):
    assert frac(a + b) == frac(a) + frac(b)
    assert frac(a * b) == frac(a) * frac(b)
    assert frac(a.abs_diff(b)) == abs(frac(a) - frac(b))
    assert (a < b) == (frac(a) < frac(b))
    assert (a == b) == (frac(a) == frac(b))


@given(dyadics, st.integers(0, 12))
def test_rounding_lands_on_grid_within_half_step(a, e):
    r = a.round_to(e)
    assert (frac(r) * 2 ** e).denominator == 1
    assert abs(frac(r) - frac(a)) <= Fraction(1, 2 ** (e + 1))


def test_zero_is_additive_identity():
    assert ZERO + Dyadic(5, 4) == Dyadic(5, 4)
