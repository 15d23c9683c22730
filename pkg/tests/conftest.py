import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from padic_particles import linalg as la
from padic_particles.padic import PAdic
from padic_particles.quadform import QuadSpace

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

PRIMES = [2, 3, 5, 7, 13]

primes = st.sampled_from(PRIMES)
small_primes = st.sampled_from([2, 3, 5, 7])


@st.composite
def nonzero_rationals(draw, height=200):
    num = draw(st.integers(-height, height).filter(bool))
    den = draw(st.integers(1, height))
    return Fraction(num, den)


def rationals(height=200):
    return st.builds(Fraction, st.integers(-height, height), st.integers(1, height))


def pa(p, x, prec=32):
    return PAdic.from_rational(p, Fraction(x), 1, prec)


def vec(p, xs, prec=32):
    return la.vector(p, xs, prec)


def space(p, coeffs, prec=32):
    return QuadSpace.from_rationals(p, coeffs, prec)


@pytest.fixture
def rng():
    return random.Random(20261016)
