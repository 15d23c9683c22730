"""1-cocycles, affine actions and multipliers for semidirect products A x' G.

A group G acts linearly on a vector group A (coordinates over Q_p) and
contragrediently on its dual; characters of A are identified with dual
vectors through the additive character psi, so a multiplier value is an
element of Q/Z.  Only the parametric families defined here (and in
``galilean``) are constructible; their identities are checked exactly on
sampled elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import linalg as la
from .padic import PhaseQZ, additive_character

DualPoint = tuple


@dataclass(frozen=True)
class GroupModel:
    name: str
    p: int
    mul: Callable
    inverse: Callable
    identity: Any
    is_identity: Callable
    act: Callable  # g, a -> g[a]
    act_dual: Callable  # g, chi -> g[chi]
    pair: Callable  # a, chi -> <a, chi> in Q_p
    dual_dim: int

    def dual_zero(self) -> DualPoint:
        return la.zeros(self.p, self.dual_dim)


@dataclass(frozen=True)
class Cocycle1:
    family: str
    params: dict
    evaluate: Callable = field(compare=False)

    def __call__(self, g) -> DualPoint:
        return self.evaluate(g)


@dataclass(frozen=True)
class Multiplier:
    """Additive multiplier on H = A x' G; elements of H are pairs (a, g)."""

    family: str
    params: dict
    evaluate: Callable = field(compare=False)

    def __call__(self, h1, h2) -> PhaseQZ:
        return self.evaluate(h1, h2)


def _deviation(x: DualPoint, y: DualPoint):
    """None when x == y to precision, else the least valuation of x - y."""
    diff = la.sub(x, y)
    bad = [d.val for d in diff if not d.is_zero()]
    return min(bad) if bad else None


def _report(family, params, n, failures):
    return {
        "family": family,
        "params": params,
        "samples": n,
        "failures": failures,
        "passed": not failures,
    }


def zero_cocycle(model: GroupModel) -> Cocycle1:
    return Cocycle1("zero", {}, lambda g: model.dual_zero())


def coboundary(model: GroupModel, xi: DualPoint) -> Cocycle1:
    """g -> g[xi] - xi."""
    xi = tuple(xi)
    return Cocycle1(
        "coboundary",
        {"xi": [str(c.to_fraction()) for c in xi]},
        lambda g: la.sub(model.act_dual(g, xi), xi),
    )


def add_cocycles(a: Cocycle1, b: Cocycle1) -> Cocycle1:
    return Cocycle1(
        f"{a.family}+{b.family}",
        {"left": a.params, "right": b.params},
        lambda g: la.add(a(g), b(g)),
    )


def perturbed(theta: Cocycle1, model: GroupModel, shift: DualPoint) -> Cocycle1:
    """theta + shift away from the identity; not a cocycle when shift != 0."""
    shift = tuple(shift)

    def ev(g):
        if model.is_identity(g):
            return theta(g)
        return la.add(theta(g), shift)

    return Cocycle1(f"perturbed-{theta.family}", dict(theta.params), ev)


def verify_cocycle(theta: Cocycle1, model: GroupModel, samples) -> dict:
    """Check theta(g g') = theta(g) + g[theta(g')] on each sampled pair."""
    failures = []
    samples = list(samples)
    for k, (g, h) in enumerate(samples):
        lhs = theta(model.mul(g, h))
        rhs = la.add(theta(g), model.act_dual(g, theta(h)))
        dev = _deviation(lhs, rhs)
        if dev is not None:
            failures.append({"sample": k, "deviation_valuation": dev})
    if _deviation(theta(model.identity), model.dual_zero()) is not None:
        failures.append({"sample": "identity", "deviation_valuation": None})
    return _report(theta.family, theta.params, len(samples), failures)


def affine_act(theta: Cocycle1, model: GroupModel, g, chi: DualPoint) -> DualPoint:
    """g{chi} = g[chi] + theta(g)."""
    return la.add(model.act_dual(g, chi), theta(g))


def verify_affine_action(theta: Cocycle1, model: GroupModel, samples) -> dict:
    """Check (g g'){chi} = g{g'{chi}} on sampled (g, g', chi)."""
    failures = []
    samples = list(samples)
    for k, (g, h, chi) in enumerate(samples):
        lhs = affine_act(theta, model, model.mul(g, h), chi)
        rhs = affine_act(theta, model, g, affine_act(theta, model, h, chi))
        dev = _deviation(lhs, rhs)
        if dev is not None:
            failures.append({"sample": k, "deviation_valuation": dev})
    return _report(theta.family, theta.params, len(samples), failures)


def verify_coboundary_equivalence(
    theta: Cocycle1, model: GroupModel, xi: DualPoint, samples
) -> dict:
    """For theta' = theta + d(xi): g_theta'{chi} = g_theta{chi + xi} - xi."""
    shifted = add_cocycles(theta, coboundary(model, xi))
    failures = []
    samples = list(samples)
    for k, (g, chi) in enumerate(samples):
        lhs = affine_act(shifted, model, g, chi)
        rhs = la.sub(affine_act(theta, model, g, la.add(chi, xi)), xi)
        dev = _deviation(lhs, rhs)
        if dev is not None:
            failures.append({"sample": k, "deviation_valuation": dev})
    return _report(shifted.family, shifted.params, len(samples), failures)


# -- multipliers on H = A x' G --------------------------------------------------


def semidirect_mul(model: GroupModel, h1, h2):
    (a1, g1), (a2, g2) = h1, h2
    return (la.add(a1, model.act(g1, a2)), model.mul(g1, g2))


def semidirect_identity(model: GroupModel):
    return (model.dual_zero(), model.identity)


def trivial_multiplier(model: GroupModel) -> Multiplier:
    return Multiplier("trivial", {}, lambda h1, h2: PhaseQZ(model.p, Fraction(0)))


def assemble_multiplier(n_G: Multiplier, theta: Cocycle1, model: GroupModel) -> Multiplier:
    """m((a, g), (a', g')) = n_G(g, g') + psi(<a', theta(g^-1)>)."""

    def ev(h1, h2):
        (_, g1), (a2, g2) = h1, h2
        phase = additive_character(model.pair(a2, theta(model.inverse(g1))))
        ident = semidirect_identity(model)
        return n_G((ident[0], g1), (ident[0], g2)) + phase

    return Multiplier(
        f"assembled({n_G.family},{theta.family})",
        {"n_G": n_G.params, "theta": theta.params},
        ev,
    )


def verify_multiplier(m: Multiplier, model: GroupModel, samples) -> dict:
    """2-cocycle identity in Q/Z on sampled triples, plus normalization."""
    failures = []
    samples = list(samples)
    e = semidirect_identity(model)
    mul = lambda x, y: semidirect_mul(model, x, y)
    for k, (h1, h2, h3) in enumerate(samples):
        lhs = m(h1, h2) + m(mul(h1, h2), h3)
        rhs = m(h1, mul(h2, h3)) + m(h2, h3)
        if not (lhs - rhs).is_zero():
            failures.append({"sample": k, "defect": str((lhs - rhs).value)})
        if not (m(e, h1).is_zero() and m(h1, e).is_zero()):
            failures.append({"sample": k, "defect": "not normalized"})
    return _report(m.family, m.params, len(samples), failures)
