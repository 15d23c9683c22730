"""Seeded generators for property checks.  Everything goes through a
``random.Random`` so a (seed, prime, precision) triple fixes every sample."""

from __future__ import annotations

import random
from fractions import Fraction

from .galilean import GalileanElement
from .orthogrp import OrthMatrix, SL2Element, reflection
from .padic import PAdic
from .quadform import QuadSpace


def rng_for(seed: int, *salt) -> random.Random:
    # string seeds hash deterministically (unlike hash() of a tuple)
    return random.Random(":".join(str(s) for s in (seed,) + salt))


def rational(rng: random.Random, p: int, height: int = 40, spread: int = 2) -> Fraction:
    """A nonzero rational whose p-adic valuation lies in [-spread, spread]."""
    while True:
        num = rng.randint(-height, height)
        if num:
            break
    den = rng.randint(1, height)
    e = rng.randint(-spread, spread)
    return Fraction(num, den) * Fraction(p) ** e


def padic(rng, p, prec, **kw) -> PAdic:
    return PAdic.from_rational(p, rational(rng, p, **kw), 1, prec)


def integral(rng, p, prec, height: int = 40) -> PAdic:
    """A p-adic integer (possibly zero), as an exact rational with unit denominator."""
    while True:
        den = rng.randint(1, height)
        if den % p:
            break
    x = Fraction(rng.randint(-height, height), den)
    return PAdic.from_rational(p, x, 1, prec)


def vector(rng, p, n, prec, zeros: bool = True) -> tuple:
    out = []
    for _ in range(n):
        if zeros and rng.random() < 0.15:
            out.append(PAdic.zero(p))
        else:
            out.append(padic(rng, p, prec, spread=1))
    return tuple(out)


def diag_coeffs(rng, p, n, height: int = 60) -> list:
    return [rational(rng, p, height, spread=2) for _ in range(n)]


def diag_form(rng, p, n, prec) -> QuadSpace:
    return QuadSpace.from_rationals(p, diag_coeffs(rng, p, n), prec)


def anisotropic_vector(rng, V: QuadSpace, prec) -> tuple:
    while True:
        v = vector(rng, V.prime, V.dim, prec)
        if not V.Q(v).is_zero():
            return v


def rotation(rng, V: QuadSpace, prec, pairs: int = 1) -> OrthMatrix:
    """An element of SO(V): a product of an even number of reflections."""
    gram = V.gram()
    M = None
    for _ in range(2 * pairs):
        r = reflection(gram, anisotropic_vector(rng, V, prec))
        M = r if M is None else M @ r
    return M


def reflection_of(rng, V: QuadSpace, prec) -> OrthMatrix:
    return reflection(V.gram(), anisotropic_vector(rng, V, prec))


def sl2(rng, p, prec) -> SL2Element:
    a = padic(rng, p, prec, spread=1)
    b = integral(rng, p, prec)
    c = integral(rng, p, prec)
    return SL2Element(a, b, c, (1 + b * c) / a)


def rotation_boost(rng, V0: QuadSpace, prec):
    return (vector(rng, V0.prime, V0.dim, prec), rotation(rng, V0, prec))


def galilean(rng, V0: QuadSpace, prec):
    u = vector(rng, V0.prime, V0.dim, prec)
    v, W = rotation_boost(rng, V0, prec)
    return GalileanElement(u, padic(rng, V0.prime, prec, spread=1), v, W)


def nonzero_scalar(rng, p, prec) -> PAdic:
    return padic(rng, p, prec, spread=1)
