"""The Galilean group over Q_p and its Schrodinger-mass multipliers.

Space is a quadratic space V0 with bilinear form (.,.); spacetime is
V = V0 + k.  An element r = ((u, eta), (v, W)) acts on spacetime by
(x, t) -> (W x + t v + u, t + eta); the rotation-boost subgroup R consists
of the pairs (v, W).

Sign convention: the cocycle attached to the mass parameter tau is
theta_tau(v, W) = (2 tau v, -tau (v, v)).  This is the cocycle whose affine
action g[chi] + theta_tau(g) is (W xi + 2 tau v, t - (W xi, v) - tau (v, v))
for the contragredient action (xi, t) -> (W xi, t - (W xi, v)).  With a
minus sign on the first component the cocycle identity fails for that
action; ``theta_tau_with_opposite_boost_sign`` keeps that variant around as a
negative control.  Likewise the multiplier is
psi(-2 tau (v, W u') - tau eta' (v, v)); the tau on the second term is what
makes tau = 0 trivial and the 2-cocycle identity hold.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import linalg as la
from .cocycle import Cocycle1, GroupModel, Multiplier
from .orthogrp import OrthMatrix
from .orthogrp import identity as orth_identity
from .padic import PAdic, PhaseQZ, additive_character
from .quadform import QuadSpace


class GalDualPoint(NamedTuple):
    xi: tuple
    t: PAdic

    def flat(self) -> tuple:
        return tuple(self.xi) + (self.t,)

    @classmethod
    def from_flat(cls, c) -> GalDualPoint:
        return cls(tuple(c[:-1]), c[-1])


@dataclass(frozen=True)
class GalileanElement:
    u: tuple
    eta: PAdic
    v: tuple
    W: OrthMatrix

    @property
    def rotation_boost(self):
        return (self.v, self.W)

    @property
    def translation(self) -> tuple:
        return tuple(self.u) + (self.eta,)

    def __eq__(self, other):
        if not isinstance(other, GalileanElement):
            return NotImplemented
        return (
            la.vec_equal(self.u, other.u)
            and self.eta == other.eta
            and la.vec_equal(self.v, other.v)
            and self.W == other.W
        )

    __hash__ = None


def form(V0: QuadSpace):
    return V0.B


def identity(V0: QuadSpace) -> GalileanElement:
    p = V0.prime
    zero = la.zeros(p, V0.dim)
    return GalileanElement(zero, PAdic.zero(p), zero, orth_identity(V0.gram()))


# -- rotation-boost group R = V0 x' SO(V0) -------------------------------------


def r_mul(g, h):
    (v, W), (v2, W2) = g, h
    return (la.add(v, W.apply(v2)), W @ W2)


def r_inverse(g):
    v, W = g
    Wi = W.inverse()
    return (la.neg(Wi.apply(v)), Wi)


def r_identity(V0: QuadSpace):
    return (la.zeros(V0.prime, V0.dim), orth_identity(V0.gram()))


def act_V(g, a):
    """(v, W): (u, eta) -> (W u + eta v, eta), on flat coordinates."""
    v, W = g
    u, eta = a[:-1], a[-1]
    return la.add(W.apply(u), la.scale(eta, v)) + (eta,)


def dual_act(V0: QuadSpace, g, chi: GalDualPoint) -> GalDualPoint:
    """(v, W): (xi, t) -> (W xi, t - (W xi, v))."""
    v, W = g
    wxi = W.apply(chi.xi)
    return GalDualPoint(wxi, chi.t - V0.B(wxi, v))


def pairing(V0: QuadSpace, chi: GalDualPoint, a) -> PAdic:
    """<(xi, t), (u, eta)> = (xi, u) + t eta."""
    return V0.B(chi.xi, a[:-1]) + chi.t * a[-1]


def rotation_boost_model(V0: QuadSpace) -> GroupModel:
    e = r_identity(V0)

    def is_identity(g):
        v, W = g
        return la.vec_equal(v, e[0]) and W == e[1]

    return GroupModel(
        name="galilean-R",
        p=V0.prime,
        mul=r_mul,
        inverse=r_inverse,
        identity=e,
        is_identity=is_identity,
        act=act_V,
        act_dual=lambda g, c: dual_act(V0, g, GalDualPoint.from_flat(c)).flat(),
        pair=lambda a, c: pairing(V0, GalDualPoint.from_flat(c), a),
        dual_dim=V0.dim + 1,
    )


# -- the full group G = V x' R ----------------------------------------------------


def compose(r: GalileanElement, s: GalileanElement) -> GalileanElement:
    if len(r.u) != len(s.u):
        raise ValueError("elements live over different spaces")
    a = la.add(r.translation, act_V(r.rotation_boost, s.translation))
    v, W = r_mul(r.rotation_boost, s.rotation_boost)
    return GalileanElement(a[:-1], a[-1], v, W)


def inverse(r: GalileanElement) -> GalileanElement:
    gi = r_inverse(r.rotation_boost)
    a = la.neg(act_V(gi, r.translation))
    return GalileanElement(a[:-1], a[-1], gi[0], gi[1])


def from_pair(a, g) -> GalileanElement:
    return GalileanElement(tuple(a[:-1]), a[-1], g[0], g[1])


def as_pair(r: GalileanElement):
    return (r.translation, r.rotation_boost)


def act_spacetime(r: GalileanElement, x, t: PAdic):
    """(x, t) -> (W x + t v + u, t + eta)."""
    y = la.add(la.add(r.W.apply(x), la.scale(t, r.v)), r.u)
    return y, t + r.eta


# -- cocycles, multipliers and the affine action --------------------------------


def theta_tau(tau: PAdic, g) -> GalDualPoint:
    v, _ = g
    return GalDualPoint(la.scale(2 * tau, v), -tau * _vv(v, g))


def _vv(v, g):
    return _form_of(g).B(v, v)


def _form_of(g) -> QuadSpace:
    # the rotation carries its (diagonal) Gram matrix
    W = g[1]
    return QuadSpace(W.p, tuple(W.gram[i][i] for i in range(W.n)))


def theta_tau_with_opposite_boost_sign(tau: PAdic, g) -> GalDualPoint:
    """(-2 tau v, -tau (v, v)): fails the cocycle identity for tau != 0."""
    v, _ = g
    return GalDualPoint(la.scale(-2 * tau, v), -tau * _vv(v, g))


def _tau_params(tau: PAdic) -> dict:
    return {"tau": str(tau.to_fraction())}


def theta_cocycle(tau: PAdic) -> Cocycle1:
    return Cocycle1("theta_tau", _tau_params(tau), lambda g: theta_tau(tau, g).flat())


def opposite_sign_cocycle(tau: PAdic) -> Cocycle1:
    return Cocycle1(
        "theta_tau_opposite_boost_sign",
        _tau_params(tau),
        lambda g: theta_tau_with_opposite_boost_sign(tau, g).flat(),
    )


def multiplier_m(tau: PAdic, r: GalileanElement, s: GalileanElement) -> PhaseQZ:
    """m_{1,tau}(r, r') = psi(-2 tau (v, W u') - tau eta' (v, v))."""
    V0 = _form_of(r.rotation_boost)
    arg = -2 * tau * V0.B(r.v, r.W.apply(s.u)) - tau * s.eta * V0.B(r.v, r.v)
    return additive_character(arg)


def _sign_flipped_m(tau: PAdic, r: GalileanElement, s: GalileanElement) -> PhaseQZ:
    V0 = _form_of(r.rotation_boost)
    arg = 2 * tau * V0.B(r.v, r.W.apply(s.u)) - tau * s.eta * V0.B(r.v, r.v)
    return additive_character(arg)


def galilean_multiplier(tau: PAdic) -> Multiplier:
    return Multiplier(
        "m_1_tau",
        _tau_params(tau),
        lambda h1, h2: multiplier_m(tau, from_pair(*h1), from_pair(*h2)),
    )


def sign_flipped_multiplier(tau: PAdic) -> Multiplier:
    """m_{1,tau} with the sign of the (v, W u') term reversed (not a multiplier)."""
    return Multiplier(
        "m_1_tau_sign_flipped",
        _tau_params(tau),
        lambda h1, h2: _sign_flipped_m(tau, from_pair(*h1), from_pair(*h2)),
    )


def affine_act_gal(V0: QuadSpace, tau: PAdic, g, chi: GalDualPoint) -> GalDualPoint:
    """(v, W): (xi, t) -> (W xi + 2 tau v, t - (W xi, v) - tau (v, v))."""
    v, W = g
    wxi = W.apply(chi.xi)
    return GalDualPoint(
        la.add(wxi, la.scale(2 * tau, v)),
        chi.t - V0.B(wxi, v) - tau * V0.B(v, v),
    )


def invariant_M(V0: QuadSpace, tau: PAdic, chi: GalDualPoint) -> PAdic:
    """M(xi, t) = (xi, xi) + 4 tau t."""
    return V0.B(chi.xi, chi.xi) + 4 * tau * chi.t


def base_point(V0: QuadSpace, tau: PAdic, a: PAdic) -> GalDualPoint:
    """(0, a / 4 tau), the point of the orbit M = a fixed by R0."""
    return GalDualPoint(la.zeros(V0.prime, V0.dim), a / (4 * tau))


def orbit_chart(V0: QuadSpace, tau: PAdic, a: PAdic, xi) -> GalDualPoint:
    """xi -> (xi, (a - (xi, xi)) / 4 tau), a bijection of V0' onto M = a."""
    xi = tuple(xi)
    return GalDualPoint(xi, (a - V0.B(xi, xi)) / (4 * tau))


def unchart(chi: GalDualPoint):
    return tuple(chi.xi)


def chart_action(tau: PAdic, g, xi):
    """The affine action read through the chart: xi -> W xi + 2 tau v."""
    v, W = g
    return la.add(W.apply(xi), la.scale(2 * tau, v))


def transport_element(V0: QuadSpace, tau: PAdic, xi):
    """(xi / 2 tau, I), which carries the base point to the chart point over xi."""
    return (la.scale((2 * tau).inverse(), tuple(xi)), orth_identity(V0.gram()))


def stabilizer_check(V0: QuadSpace, tau: PAdic, a: PAdic, g) -> bool:
    x = base_point(V0, tau, a)
    y = affine_act_gal(V0, tau, g, x)
    return la.vec_equal(x.flat(), y.flat())


def translation_phase(V0: QuadSpace, tau: PAdic, a: PAdic, translation, xi) -> PhaseQZ:
    """psi((u, xi) + eta (a - (xi, xi)) / 4 tau)."""
    u, eta = translation[:-1], translation[-1]
    xi = tuple(xi)
    return additive_character(V0.B(u, xi) + eta * (a - V0.B(xi, xi)) / (4 * tau))


def mass_phase(tau: PAdic, a: PAdic, eta: PAdic) -> PhaseQZ:
    """psi(eta a / 4 tau), the xi-independent factor of the translation phase."""
    return additive_character(eta * a / (4 * tau))


def zero_phase(p: int) -> PhaseQZ:
    return PhaseQZ(p, Fraction(0))
