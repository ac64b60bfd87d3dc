from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cfconv.scalars import (
    EXACT,
    INFINITY,
    FloatBackend,
    RationalComplex,
    format_real,
    magnitude,
    rational_sqrt,
    sqrt_upper,
)
from cfconv.errors import InexactError

from conftest import gaussian, rationals


def as_pair(z: RationalComplex):
    return z.re, z.im


@given(gaussian(), gaussian())
def test_field_operations_match_component_formulas(x, y):
    # (a+bi)(c+di) = (ac-bd) + (ad+bc)i, computed on plain Fractions
    a, b = as_pair(x)
    c, d = as_pair(y)
    assert as_pair(x + y) == (a + c, b + d)
    assert as_pair(x - y) == (a - c, b - d)
    assert as_pair(x * y) == (a * c - b * d, a * d + b * c)
    if y:
        q = x / y
        assert q * y == x


@given(gaussian(nonzero=True))
def test_abs2_and_conjugate(z):
    assert z * z.conjugate() == RationalComplex(z.abs2())


def test_rational_sqrt_exact_and_inexact():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(InexactError):
        rational_sqrt(Fraction(2))


@given(st.fractions(min_value=0, max_value=10**6))
def test_sqrt_upper_brackets_root(q):
    s = sqrt_upper(q, bits=64)
    assert s * s >= q
    assert s - Fraction(1, 2**64) <= 0 or (s - Fraction(1, 2**64)) ** 2 <= q


def test_exact_sqrt_of_negative_is_principal():
    assert EXACT.sqrt(RationalComplex(-4)) == RationalComplex(0, 2)


def test_float_backend_minimum_precision():
    with pytest.raises(ValueError):
        FloatBackend(32)


def test_float_backend_sqrt_two():
    fb = FloatBackend(128)
    r = fb.sqrt(fb.convert(2))
    assert abs(r * r - 2) < fb.ctx.mpf(2) ** -120


def test_magnitude_and_infinity():
    assert magnitude(RationalComplex(3, 4)) == 5
    assert magnitude(INFINITY) == magnitude(INFINITY) + 1


def test_format_real_is_stable():
    assert format_real(Fraction(1, 4), 10) == format_real(Fraction(1, 4), 10)
    assert format_real(Fraction(1, 3), 5).startswith("0.33333")


@given(rationals(nonzero=True))
def test_from_fraction_roundtrip_is_close(q):
    fb = FloatBackend(128)
    v = fb.from_fraction(q)
    re, _ = fb.to_fractions(v)
    assert abs(re - q) <= abs(q) * Fraction(1, 2**120)
