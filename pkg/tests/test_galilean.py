from fractions import Fraction

import pytest

from conftest import pa, space, vec
from padic_particles import galilean as gal
from padic_particles import linalg as la
from padic_particles import sampling
from padic_particles.cocycle import verify_cocycle, verify_multiplier
from padic_particles.orthogrp import identity as orth_identity
from padic_particles.padic import PAdic, square_class_reps

PREC = 40


def V(p=5, coeffs=(1, 1, 1)):
    return space(p, coeffs, PREC)


def elem(rng, V0):
    return sampling.galilean(rng, V0, PREC)


def rb(rng, V0):
    return sampling.rotation_boost(rng, V0, PREC)


def chi(rng, V0):
    return gal.GalDualPoint(sampling.vector(rng, V0.prime, V0.dim, PREC), sampling.padic(rng, V0.prime, PREC))


def test_group_laws(rng):
    V0 = V()
    e = gal.identity(V0)
    for _ in range(100):
        r, s, t = elem(rng, V0), elem(rng, V0), elem(rng, V0)
        assert gal.compose(r, e) == r and gal.compose(e, r) == r
        assert gal.compose(r, gal.inverse(r)) == e
        assert gal.compose(gal.compose(r, s), t) == gal.compose(r, gal.compose(s, t))


def test_compose_rejects_mismatched_spaces(rng):
    with pytest.raises(ValueError):
        gal.compose(elem(rng, V()), elem(rng, V(5, (1, 2))))


def test_spacetime_action_examples(rng):
    V0 = V()
    x, t = vec(5, [1, 2, 3]), pa(5, 7)
    assert gal.act_spacetime(gal.identity(V0), x, t) == (x, t)
    v = vec(5, [4, 0, 1])
    boost = gal.GalileanElement(la.zeros(5, 3), PAdic.zero(5), v, orth_identity(V0.gram()))
    y, s = gal.act_spacetime(boost, x, pa(5, 1))
    assert la.vec_equal(y, la.add(x, v)) and s == 1


def test_spacetime_action_axiom(rng):
    V0 = V(7, (1, 3, 7))
    for _ in range(100):
        r, s = elem(rng, V0), elem(rng, V0)
        x, t = sampling.vector(rng, 7, 3, PREC), sampling.padic(rng, 7, PREC)
        lhs = gal.act_spacetime(gal.compose(r, s), x, t)
        rhs = gal.act_spacetime(r, *gal.act_spacetime(s, x, t))
        assert la.vec_equal(lhs[0], rhs[0]) and lhs[1] == rhs[1]


def test_dual_action_examples(rng):
    V0 = V()
    c = chi(rng, V0)
    e = gal.r_identity(V0)
    d = gal.dual_act(V0, e, c)
    assert la.vec_equal(d.xi, c.xi) and d.t == c.t
    v = vec(5, [1, 2, 0])
    d = gal.dual_act(V0, (v, orth_identity(V0.gram())), c)
    assert la.vec_equal(d.xi, c.xi) and d.t == c.t - V0.B(c.xi, v)


def test_contragredience(rng):
    V0 = V(3, (1, 2, 3))
    for _ in range(100):
        g = rb(rng, V0)
        a = sampling.vector(rng, 3, 4, PREC)
        c = chi(rng, V0)
        assert gal.pairing(V0, gal.dual_act(V0, g, c), gal.act_V(g, a)) == gal.pairing(V0, c, a)


def test_theta_examples(rng):
    V0 = V()
    W = sampling.rotation(rng, V0, PREC)
    th = gal.theta_tau(pa(5, 3), (la.zeros(5, 3), W))
    assert all(x.is_zero() for x in th.flat())
    th = gal.theta_tau(PAdic.zero(5), rb(rng, V0))
    assert all(x.is_zero() for x in th.flat())
    v = vec(5, [1, 1, 0])
    th = gal.theta_tau(pa(5, 3), (v, W))
    assert la.vec_equal(th.xi, vec(5, [6, 6, 0])) and th.t == -6


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_theta_cocycle_identity(p, rng):
    V0 = V(p, (1, -1, p))
    model = gal.rotation_boost_model(V0)
    tau = sampling.nonzero_scalar(rng, p, PREC)
    samples = [(rb(rng, V0), rb(rng, V0)) for _ in range(100 if p == 5 else 30)]
    assert verify_cocycle(gal.theta_cocycle(tau), model, samples)["passed"]
    assert not verify_cocycle(gal.opposite_sign_cocycle(tau), model, samples)["passed"]


def test_theta_additive_in_tau(rng):
    V0 = V()
    for _ in range(30):
        t1, t2 = sampling.padic(rng, 5, PREC), sampling.padic(rng, 5, PREC)
        g = rb(rng, V0)
        lhs = gal.theta_tau(t1 + t2, g).flat()
        rhs = la.add(gal.theta_tau(t1, g).flat(), gal.theta_tau(t2, g).flat())
        assert la.vec_equal(lhs, rhs)


def _h(r):
    return gal.as_pair(r)


@pytest.mark.parametrize("p,tau", [(5, Fraction(3)), (5, Fraction(1, 25)), (2, Fraction(1, 8)), (3, Fraction(2, 9))])
def test_multiplier_identity(p, tau, rng):
    V0 = V(p, (1, 1, 1))
    model = gal.rotation_boost_model(V0)
    m = gal.galilean_multiplier(pa(p, tau))
    n = 100 if p == 5 else 40
    triples = [tuple(_h(elem(rng, V0)) for _ in range(3)) for _ in range(n)]
    assert verify_multiplier(m, model, triples)["passed"]


def test_multiplier_normalized_and_trivial_at_zero(rng):
    V0 = V()
    e = gal.identity(V0)
    tau = pa(5, Fraction(1, 5))
    for _ in range(30):
        r, s = elem(rng, V0), elem(rng, V0)
        assert gal.multiplier_m(tau, e, r).is_zero()
        assert gal.multiplier_m(tau, r, e).is_zero()
        assert gal.multiplier_m(PAdic.zero(5), r, s).is_zero()


def test_sign_flipped_multiplier_fails(rng):
    V0 = V(5, (1, 1, 1))
    model = gal.rotation_boost_model(V0)
    tau = pa(5, Fraction(1, 125))
    triples = [tuple(_h(elem(rng, V0)) for _ in range(3)) for _ in range(60)]
    assert not verify_multiplier(gal.sign_flipped_multiplier(tau), model, triples)["passed"]


def test_affine_action_formula(rng):
    V0 = V()
    tau = pa(5, 2)
    theta = gal.theta_cocycle(tau)
    model = gal.rotation_boost_model(V0)
    for _ in range(50):
        g, c = rb(rng, V0), chi(rng, V0)
        direct = gal.affine_act_gal(V0, tau, g, c).flat()
        via_theta = la.add(model.act_dual(g, c.flat()), theta(g))
        assert la.vec_equal(direct, via_theta)
    c = chi(rng, V0)
    same = gal.affine_act_gal(V0, tau, gal.r_identity(V0), c)
    assert la.vec_equal(same.flat(), c.flat())


def test_affine_action_axiom(rng):
    V0 = V(7, (1, 2, 3))
    tau = pa(7, 3)
    for _ in range(100):
        g, h, c = rb(rng, V0), rb(rng, V0), chi(rng, V0)
        lhs = gal.affine_act_gal(V0, tau, gal.r_mul(g, h), c)
        rhs = gal.affine_act_gal(V0, tau, g, gal.affine_act_gal(V0, tau, h, c))
        assert la.vec_equal(lhs.flat(), rhs.flat())


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_M_at_base_points(p):
    V0 = V(p, (1, 1, 1))
    for tau in (pa(p, 1), pa(p, Fraction(1, p)), pa(p, 3 * p)):
        for a in square_class_reps(p):
            x = gal.base_point(V0, tau, pa(p, a))
            assert gal.invariant_M(V0, tau, x) == a


def test_M_invariant_on_orbits(rng):
    V0 = V(5, (1, 2, 5))
    tau = pa(5, Fraction(2, 5))
    for _ in range(200):
        g, c = rb(rng, V0), chi(rng, V0)
        assert gal.invariant_M(V0, tau, gal.affine_act_gal(V0, tau, g, c)) == gal.invariant_M(V0, tau, c)


def test_orbit_chart(rng):
    V0 = V()
    tau, a = pa(5, 3), pa(5, 7)
    base = gal.orbit_chart(V0, tau, a, la.zeros(5, 3))
    assert la.vec_equal(base.flat(), gal.base_point(V0, tau, a).flat())
    for _ in range(100):
        xi = sampling.vector(rng, 5, 3, PREC)
        x = gal.orbit_chart(V0, tau, a, xi)
        assert gal.invariant_M(V0, tau, x) == a
        assert la.vec_equal(gal.unchart(x), xi)
        g = rb(rng, V0)
        moved = gal.affine_act_gal(V0, tau, g, x)
        assert la.vec_equal(gal.unchart(moved), gal.chart_action(tau, g, xi))
        assert la.vec_equal(gal.orbit_chart(V0, tau, a, gal.unchart(moved)).flat(), moved.flat())


def test_transport_to_chart_point(rng):
    V0 = V(2, (1, 1, 3))
    tau = pa(2, Fraction(1, 2))
    for a in square_class_reps(2):
        for _ in range(5):
            xi = sampling.vector(rng, 2, 3, PREC)
            g = gal.transport_element(V0, tau, xi)
            got = gal.affine_act_gal(V0, tau, g, gal.base_point(V0, tau, pa(2, a)))
            assert la.vec_equal(got.flat(), gal.orbit_chart(V0, tau, pa(2, a), xi).flat())


def test_stabilizer(rng):
    V0 = V()
    tau, a = pa(5, 3), pa(5, 2)
    W = sampling.rotation(rng, V0, PREC)
    assert gal.stabilizer_check(V0, tau, a, (la.zeros(5, 3), W))
    assert not gal.stabilizer_check(V0, tau, a, (vec(5, [1, 0, 0]), orth_identity(V0.gram())))
    for _ in range(200):
        g = rb(rng, V0)
        no_boost = all(c.is_zero() for c in g[0])
        assert gal.stabilizer_check(V0, tau, a, g) == no_boost


def test_phase_examples_and_factorization(rng):
    V0 = V()
    tau = pa(5, Fraction(1, 5))
    zero = (PAdic.zero(5),) * 4
    assert gal.translation_phase(V0, tau, pa(5, 3), zero, vec(5, [1, 2, 3])).is_zero()
    for _ in range(100):
        a = sampling.padic(rng, 5, PREC)
        tr = sampling.vector(rng, 5, 4, PREC)
        xi = sampling.vector(rng, 5, 3, PREC)
        full = gal.translation_phase(V0, tau, a, tr, xi)
        split = gal.mass_phase(tau, a, tr[-1]) + gal.translation_phase(V0, tau, PAdic.zero(5), tr, xi)
        assert full == split


def test_phase_additive_in_translations(rng):
    # translations commute, and the multiplier vanishes on pure translations
    V0 = V()
    tau = pa(5, Fraction(3, 25))
    for _ in range(50):
        a = sampling.padic(rng, 5, PREC)
        xi = sampling.vector(rng, 5, 3, PREC)
        t1, t2 = sampling.vector(rng, 5, 4, PREC), sampling.vector(rng, 5, 4, PREC)
        lhs = gal.translation_phase(V0, tau, a, la.add(t1, t2), xi)
        rhs = gal.translation_phase(V0, tau, a, t1, xi) + gal.translation_phase(V0, tau, a, t2, xi)
        assert lhs == rhs
