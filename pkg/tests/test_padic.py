from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import PRIMES, nonzero_rationals, pa, primes, rationals
from padic_particles import oracles
from padic_particles.padic import (
    PAdic,
    PhaseQZ,
    PrecisionError,
    PrimeMismatchError,
    SquareClass,
    additive_character,
    arith,
    from_rational,
    hilbert_symbol,
    is_square,
    least_nonresidue,
    sqrt,
    square_class_of,
    square_class_reps,
)


def test_from_rational_examples():
    x = from_rational(5, 75, 1, 20)
    assert (x.val, x.unit % 5, x.prec) == (2, 3, 20)
    one = from_rational(5, 1, 1, 20)
    assert (one.val, one.unit) == (0, 1)
    y = from_rational(2, 7, 4, 20)
    assert y.val == -2 and y.unit == 7


def test_from_rational_errors():
    with pytest.raises(ZeroDivisionError):
        from_rational(5, 1, 0)
    with pytest.raises(ValueError):
        from_rational(5, 1, 1, 0)


def test_cancellation_gives_zero_state():
    a = PAdic(5, 0, 1, 20)
    b = PAdic(5, 0, 5**20 - 1, 20)
    s = arith(a, b, "add")
    assert s.is_zero() and not s.is_exact_zero()
    assert s.absprec == 20


def test_mul_and_inverse_examples():
    a, b = PAdic(5, 1, 1, 20), PAdic(5, 2, 3, 20)
    c = arith(a, b, "mul")
    assert (c.val, c.unit) == (3, 3)
    inv = b.inverse()
    assert inv.val == -2
    assert inv.unit == pow(3, -1, 5**20)
    assert b * inv == 1


def test_prime_mismatch():
    with pytest.raises(PrimeMismatchError):
        pa(5, 1) + pa(7, 1)


def test_division_by_zero_to_precision():
    z = pa(5, 1) - pa(5, 1)
    with pytest.raises(PrecisionError):
        pa(5, 3) / z


def test_cancellation_lowers_absolute_precision():
    a = pa(5, Fraction(1), 10)
    b = pa(5, Fraction(1 + 5**4), 10)
    d = b - a
    assert d.val == 4
    assert d.absprec == 10


@given(primes, nonzero_rationals(), nonzero_rationals(), nonzero_rationals())
def test_ring_laws(p, x, y, z):
    a, b, c = pa(p, x), pa(p, y), pa(p, z)
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(primes, nonzero_rationals(), nonzero_rationals())
def test_valuation_is_additive(p, x, y):
    assert pa(p, x * y).val == pa(p, x).val + pa(p, y).val


@given(primes, nonzero_rationals(height=10**6))
def test_to_fraction_roundtrip_for_integers(p, x):
    n = x.numerator
    assert pa(p, n, 40).to_fraction() == n


@given(primes, rationals())
def test_json_roundtrip(p, x):
    a = pa(p, x, 16)
    b = PAdic.from_json(a.to_json())
    assert a.to_json() == b.to_json()


def test_is_square_examples():
    assert is_square(pa(5, 6))
    assert not is_square(pa(5, 5))
    assert is_square(pa(2, 17))
    assert not is_square(pa(2, 3))


def test_is_square_needs_digits():
    with pytest.raises(PrecisionError):
        is_square(PAdic(2, 0, 1, 2))
    with pytest.raises((ValueError, PrecisionError)):
        is_square(PAdic.zero(5))


@pytest.mark.parametrize("p", PRIMES)
def test_is_square_matches_oracle_on_representatives(p):
    for r in square_class_reps(p):
        assert is_square(pa(p, r)) == oracles.is_square(p, r)


@given(primes, nonzero_rationals(height=500))
def test_is_square_matches_oracle(p, x):
    assert is_square(pa(p, x)) == oracles.is_square(p, x)


def test_sqrt_examples():
    assert sqrt(pa(7, 1)) == 1
    r = sqrt(pa(5, 6, 10))
    d = r * r - 6
    assert d.is_zero() or d.val >= 10
    two = sqrt(pa(3, 4))
    assert two == 2 or two == -2
    # the root whose last digit is the smaller residue
    assert two.unit % 3 == 1


def test_sqrt_of_nonsquare_raises():
    with pytest.raises(ValueError):
        sqrt(pa(5, 2))


@given(primes, nonzero_rationals())
def test_sqrt_of_square(p, x):
    s = pa(p, x) * pa(p, x)
    r = sqrt(s)
    assert r * r == s


def test_square_class_examples():
    assert square_class_of(pa(5, 9)).representative == 1
    assert square_class_of(pa(5, 10)).representative == 10
    assert square_class_of(pa(2, -1)).representative == -1


@pytest.mark.parametrize("p", PRIMES)
def test_square_class_reps(p):
    reps = square_class_reps(p)
    if p == 2:
        assert reps == [1, -1, 5, -5, 2, -2, 10, -10]
    else:
        u = least_nonresidue(p)
        assert reps == [1, u, p, u * p]
    # each representative is its own class and classes are distinct mod squares
    assert [square_class_of(pa(p, r)).representative for r in reps] == reps
    assert [oracles.square_class(p, r) for r in reps] == reps


@given(primes, nonzero_rationals(), nonzero_rationals())
def test_square_class_multiplicative(p, x, y):
    assert square_class_of(pa(p, x)) * square_class_of(pa(p, y)) == square_class_of(pa(p, x * y))


def test_hilbert_examples():
    assert hilbert_symbol(pa(2, -1), pa(2, -1)) == -1
    for u in range(1, 7):
        for w in range(1, 7):
            assert hilbert_symbol(pa(7, u), pa(7, w)) == 1
    for b in (2, 3, 5, -1, 10, Fraction(1, 3)):
        assert hilbert_symbol(pa(5, 1), pa(5, b)) == 1


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_hilbert_matches_oracle_on_representatives(p):
    reps = square_class_reps(p)
    for a in reps:
        for b in reps:
            assert hilbert_symbol(pa(p, a), pa(p, b)) == oracles.hilbert_symbol(p, a, b), (a, b)


@given(primes, nonzero_rationals(), nonzero_rationals(), nonzero_rationals())
def test_hilbert_laws(p, x, y, z):
    a, b, c = pa(p, x), pa(p, y), pa(p, z)
    assert hilbert_symbol(a, b) == hilbert_symbol(b, a)
    assert hilbert_symbol(a, b * c) == hilbert_symbol(a, b) * hilbert_symbol(a, c)
    assert hilbert_symbol(a, -a) == 1


def test_additive_character_examples():
    assert additive_character(pa(5, Fraction(7, 25))).value == Fraction(7, 25)
    assert additive_character(pa(5, 3)).is_zero()
    half = pa(2, Fraction(1, 2))
    assert additive_character(half + half).is_zero()
    assert additive_character(half).value == Fraction(1, 2)


def test_additive_character_negative_fraction():
    # -1/5 = 4/5 mod 1
    assert additive_character(pa(5, Fraction(-1, 5))).value == Fraction(4, 5)


@given(primes, rationals(), rationals())
def test_additive_character_homomorphism(p, x, y):
    a, b = pa(p, x), pa(p, y)
    assert additive_character(a + b) == additive_character(a) + additive_character(b)


@given(primes, rationals())
def test_additive_character_kills_integers(p, x):
    a = pa(p, x)
    assert additive_character(a).is_zero() == (a.is_zero() or a.val >= 0)


def test_character_needs_fractional_digits():
    # val -3 but only known modulo p^-5 ... absolute precision below zero
    x = PAdic(5, -3, 1, 2)
    with pytest.raises(PrecisionError):
        additive_character(x)


def test_phase_group():
    a = PhaseQZ(5, Fraction(3, 5))
    b = PhaseQZ(5, Fraction(4, 5))
    assert (a + b).value == Fraction(2, 5)
    assert (a - a).is_zero()
    assert (-a).value == Fraction(2, 5)


def test_square_class_group_law():
    for p in PRIMES:
        reps = square_class_reps(p)
        for a in reps:
            assert (SquareClass(p, a) * SquareClass(p, a)).is_trivial()
            for b in reps:
                assert (SquareClass(p, a) * SquareClass(p, b)).representative in reps


@given(st.sampled_from([3, 5, 7]), st.integers(1, 10**6))
def test_sqrt_precision_is_full(p, n):
    x = pa(p, n * n, 12)
    r = sqrt(x)
    assert r.prec >= 12 - 1
