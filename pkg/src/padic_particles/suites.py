"""Seeded property suites aggregated by ``selftest``.

Each suite draws its samples from its own seeded generator and records, per
named check, how many samples ran and which failed.  A suite that runs out
of precision is rerun from the same seed at doubled precision, a bounded
number of times; the precision actually used is part of the report.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import conformal as cf
from . import galilean as gal
from . import linalg as la
from . import oracles
from . import sampling as smp
from .cocycle import (
    affine_act,
    perturbed,
    verify_affine_action,
    verify_cocycle,
    verify_multiplier,
)
from .orthogrp import (
    NotOrthogonalError,
    cartan_dieudonne,
    in_spin_image,
    product_of_reflections,
    sl2_adjoint,
    spinor_norm,
    torus_element,
)
from .padic import (
    PAdic,
    PrecisionError,
    SquareClass,
    hilbert_symbol,
    is_square,
    sqrt,
    square_class_of,
    square_class_reps,
)
from .poincare import (
    MASSIVE,
    MASSLESS,
    classify_dual,
    conformal_verdict,
    reduction_chain,
)
from .quadform import (
    AnisotropicError,
    DegenerateFormError,
    QuadSpace,
    hyperbolic,
    invariants,
    is_isotropic,
    isotropic_vector,
    kernel_invariants,
    witt_decompose,
    witt_equivalent,
)

MAX_DOUBLINGS = 4
NEGATIVE_CONTROL_PREC = 64


@dataclass(frozen=True)
class SuiteConfig:
    prime: int
    precision: int
    seed: int
    iterations: int


class Tally:
    def __init__(self):
        self.checks: dict[str, dict] = {}

    def record(self, name: str, ok: bool, detail=None):
        c = self.checks.setdefault(name, {"samples": 0, "failures": 0, "first_failure": None})
        c["samples"] += 1
        if not ok:
            c["failures"] += 1
            if c["first_failure"] is None:
                c["first_failure"] = detail if detail is not None else c["samples"] - 1

    def merge_report(self, name: str, rep: dict, expect_pass: bool = True):
        self.record(name, rep["passed"] == expect_pass, rep["failures"][:1] or None)

    def report(self) -> dict:
        return {k: dict(v) for k, v in sorted(self.checks.items())}


# -- individual suites ----------------------------------------------------------


def suite_padic(cfg: SuiteConfig, prec: int, rng) -> Tally:
    p, t = cfg.prime, Tally()
    reps = square_class_reps(p)
    t.record("square_class_count", len(reps) == (8 if p == 2 else 4), len(reps))
    for a, b in itertools.product(reps, repeat=2):
        prod = SquareClass(p, a) * SquareClass(p, b)
        t.record("class_group_closure", prod.representative in reps)
        t.record("class_group_exponent_2", (SquareClass(p, a) * SquareClass(p, a)).is_trivial())
        h = hilbert_symbol(PAdic.from_rational(p, a, 1, prec), PAdic.from_rational(p, b, 1, prec))
        t.record("hilbert_vs_oracle", h == oracles.hilbert_symbol(p, a, b), [a, b])
    for _ in range(cfg.iterations):
        x = smp.padic(rng, p, prec)
        y = smp.padic(rng, p, prec)
        t.record("field_mul_div", (x * y) / y == x)
        t.record("field_add_sub", (x + y) - y == x)
        s = x * x
        r = sqrt(s)
        t.record("sqrt_squares", r * r == s and is_square(s))
        fx = smp.rational(rng, p)
        cls = square_class_of(PAdic.from_rational(p, fx, 1, prec)).representative
        t.record("square_class_vs_oracle", cls == oracles.square_class(p, fx), str(fx))
    return t


def suite_quadform(cfg: SuiteConfig, prec: int, rng) -> Tally:
    p, t = cfg.prime, Tally()
    for k in range(cfg.iterations):
        n = 2 + k % 3
        coeffs = smp.diag_coeffs(rng, p, n)
        V = QuadSpace.from_rationals(p, coeffs, prec)
        iso = is_isotropic(V)
        t.record("isotropy_vs_oracle", iso == oracles.is_isotropic(p, coeffs), [str(c) for c in coeffs])
        if iso:
            t.record("null_vector", V.Q(isotropic_vector(V).vector).is_zero())
        wd = witt_decompose(V)
        K = wd.kernel
        t.record("kernel_anisotropic", not is_isotropic(K))
        t.record("kernel_dim_le_4", K.dim <= 4)
        back = hyperbolic(p, wd.witt_index, prec) + K
        t.record("witt_reassembly", invariants(back) == invariants(V))
        V5 = QuadSpace.from_rationals(p, smp.diag_coeffs(rng, p, 5), prec)
        t.record("dim5_isotropic", is_isotropic(V5))
    return t


def suite_orthogrp(cfg: SuiteConfig, prec: int, rng) -> Tally:
    p, t = cfg.prime, Tally()
    for k in range(cfg.iterations):
        V = smp.diag_form(rng, p, 2 + k % 3, prec)
        M = smp.rotation(rng, V, prec, pairs=1 + k % 2)
        us = cartan_dieudonne(M)
        t.record("cartan_dieudonne_product", product_of_reflections(V.gram(), us) == M)
        t.record("cartan_dieudonne_length", len(us) <= V.dim, len(us))
        N = smp.rotation(rng, V, prec)
        t.record("spinor_norm_multiplicative", spinor_norm(M @ N) == spinor_norm(M) * spinor_norm(N))
        g, h = smp.sl2(rng, p, prec), smp.sl2(rng, p, prec)
        Ag = sl2_adjoint(g)
        t.record("adjoint_homomorphism", sl2_adjoint(g @ h) == Ag @ sl2_adjoint(h))
        t.record("adjoint_orthogonal", Ag.is_orthogonal() and Ag.det_sign == 1)
        t.record("adjoint_spinor_trivial", spinor_norm(Ag).is_trivial())
    for a in square_class_reps(p):
        alpha = PAdic.from_rational(p, a, 1, prec)
        t.record("torus_in_image_iff_square", in_spin_image(torus_element(alpha)) == is_square(alpha), a)
    return t


def _at(p, coeffs, prec) -> QuadSpace:
    return QuadSpace.from_rationals(p, coeffs, prec)


def _galilean_space(rng, p, prec) -> QuadSpace:
    return smp.diag_form(rng, p, 2 + rng.randint(0, 1), prec)


def suite_galilean(cfg: SuiteConfig, prec: int, rng, space=None, tau=None) -> Tally:
    p, t = cfg.prime, Tally()
    V0 = _galilean_space(rng, p, prec) if space is None else _at(p, space, prec)
    tau = smp.nonzero_scalar(rng, p, prec) if tau is None else PAdic.from_rational(p, tau, 1, prec)
    tau2 = smp.nonzero_scalar(rng, p, prec)
    model = gal.rotation_boost_model(V0)
    theta = gal.theta_cocycle(tau)
    n = cfg.iterations

    def rb():
        return smp.rotation_boost(rng, V0, prec)

    def dual():
        return gal.GalDualPoint(smp.vector(rng, p, V0.dim, prec), smp.padic(rng, p, prec))

    def h():
        r = smp.galilean(rng, V0, prec)
        return gal.as_pair(r)

    t.merge_report("theta_cocycle", verify_cocycle(theta, model, [(rb(), rb()) for _ in range(n)]))
    t.merge_report(
        "multiplier_2cocycle",
        verify_multiplier(gal.galilean_multiplier(tau), model, [(h(), h(), h()) for _ in range(n)]),
    )
    t.merge_report(
        "affine_action_axiom",
        verify_affine_action(theta, model, [(rb(), rb(), dual().flat()) for _ in range(n)]),
    )
    e = gal.identity(V0)
    zero_tau = PAdic.zero(p)
    for _ in range(n):
        r, s, q = (smp.galilean(rng, V0, prec) for _ in range(3))
        t.record("group_identity", gal.compose(r, e) == r and gal.compose(e, r) == r)
        t.record("group_inverse", gal.compose(r, gal.inverse(r)) == e)
        t.record("group_associative", gal.compose(gal.compose(r, s), q) == gal.compose(r, gal.compose(s, q)))
        x, tt = smp.vector(rng, p, V0.dim, prec), smp.padic(rng, p, prec)
        y1 = gal.act_spacetime(r, *gal.act_spacetime(s, x, tt))
        y2 = gal.act_spacetime(gal.compose(r, s), x, tt)
        t.record("spacetime_action_axiom", la.vec_equal(y1[0], y2[0]) and y1[1] == y2[1])
        g, chi = rb(), dual()
        a = r.translation
        lhs = gal.pairing(V0, gal.dual_act(V0, g, chi), gal.act_V(g, a))
        t.record("contragredience", lhs == gal.pairing(V0, chi, a))
        via_theta = affine_act(theta, model, g, chi.flat())
        t.record("affine_formula_matches_theta", la.vec_equal(via_theta, gal.affine_act_gal(V0, tau, g, chi).flat()))
        moved = gal.affine_act_gal(V0, tau, g, chi)
        t.record("M_invariant", gal.invariant_M(V0, tau, moved) == gal.invariant_M(V0, tau, chi))
        th_sum = gal.theta_tau(tau + tau2, g).flat()
        t.record("theta_additive_in_tau", la.vec_equal(th_sum, la.add(gal.theta_tau(tau, g).flat(), gal.theta_tau(tau2, g).flat())))
        t.record("multiplier_tau0_trivial", gal.multiplier_m(zero_tau, r, s).is_zero())
        t.record("multiplier_normalized", gal.multiplier_m(tau, e, r).is_zero() and gal.multiplier_m(tau, r, e).is_zero())
        am = smp.nonzero_scalar(rng, p, prec)
        xi = smp.vector(rng, p, V0.dim, prec)
        pt = gal.orbit_chart(V0, tau, am, xi)
        t.record("chart_on_level_set", gal.invariant_M(V0, tau, pt) == am)
        t.record("chart_section", la.vec_equal(gal.unchart(pt), xi))
        img = gal.affine_act_gal(V0, tau, g, pt)
        t.record("chart_conjugated_action", la.vec_equal(gal.unchart(img), gal.chart_action(tau, g, xi)))
        tr = gal.transport_element(V0, tau, xi)
        t.record("transport_to_chart_point", la.vec_equal(gal.affine_act_gal(V0, tau, tr, gal.base_point(V0, tau, am)).flat(), pt.flat()))
        v_zero = all(c.is_zero() for c in g[0])
        t.record("stabilizer_iff_no_boost", gal.stabilizer_check(V0, tau, am, g) == v_zero)
        t.record("stabilizer_R0", gal.stabilizer_check(V0, tau, am, (la.zeros(p, V0.dim), g[1])))
        full = gal.translation_phase(V0, tau, am, a, xi)
        split = gal.mass_phase(tau, am, a[-1]) + gal.translation_phase(V0, tau, PAdic.zero(p), a, xi)
        t.record("phase_factorization", (full - split).is_zero())
    for rep in square_class_reps(p):
        am = PAdic.from_rational(p, rep, 1, prec)
        t.record("M_base_point", gal.invariant_M(V0, tau, gal.base_point(V0, tau, am)) == am, rep)
    return t


def _isotropic_form(rng, p, prec, dims=(2, 3, 4, 5)) -> QuadSpace:
    while True:
        V = smp.diag_form(rng, p, rng.choice(dims), prec)
        if is_isotropic(V):
            return V


def suite_poincare(cfg: SuiteConfig, prec: int, rng) -> Tally:
    p, t = cfg.prime, Tally()
    for _ in range(cfg.iterations):
        V = _isotropic_form(rng, p, prec)
        M = smp.rotation(rng, V, prec)
        chi = smp.anisotropic_vector(rng, V, prec)
        c1, c2 = classify_dual(V, chi), classify_dual(V, M.apply(chi))
        t.record(
            "massive_orbit_constant",
            c1.kind == c2.kind == MASSIVE and c1.mass == c2.mass
            and c1.little_group.descriptor() == c2.little_group.descriptor(),
        )
        disc = invariants(V).disc * square_class_of(c1.mass)
        t.record("massive_disc_law", invariants(c1.little_group.space).disc == disc)
        r = isotropic_vector(V).vector
        m1, m2 = classify_dual(V, r), classify_dual(V, M.apply(r))
        t.record(
            "massless_orbit_constant",
            m1.kind == m2.kind == MASSLESS
            and m1.little_group.descriptor() == m2.little_group.descriptor(),
        )
        V1 = m1.little_group.space
        t.record("massless_little_group", V1.dim == V.dim - 2 and witt_equivalent(V1, V))
        ch = reduction_chain(V)
        dims = ch.dims()
        t.record("chain_drops_by_2", all(a - b == 2 for a, b in zip(dims, dims[1:])))
        kinv = kernel_invariants(V)
        t.record("chain_witt_equivalent", all(kernel_invariants(W) == kinv for W in ch.spaces))
        wd = witt_decompose(V)
        t.record("chain_length", len(ch.spaces) == wd.witt_index + 1)
        t.record("chain_terminal", invariants(ch.spaces[-1]) == invariants(wd.kernel) and not is_isotropic(ch.spaces[-1]))
        n = len(ch.spaces) - 1
        t.record("verdict_massive", conformal_verdict(ch, [MASSIVE]).reason == "massive")
        if n >= 2:
            v = conformal_verdict(ch, [MASSLESS, MASSIVE])
            t.record("verdict_eventually_massive", v.conformal == "No" and v.reason == "eventually-massive")
        t.record("verdict_all_massless", conformal_verdict(ch, [MASSLESS] * n).conformal == "Unknown")
    return t


def suite_conformal(cfg: SuiteConfig, prec: int, rng, space=None) -> Tally:
    p, t = cfg.prime, Tally()
    V = smp.diag_form(rng, p, 2 + rng.randint(0, 1), prec) if space is None else _at(p, space, prec)
    X = cf.ExtendedSpace(V)
    n = V.dim
    t.record("extended_witt_index", X.witt_index() == witt_decompose(V).witt_index + 1)
    P = cf.ProjPoint.from_vector(X, X.point_p())
    ident = cf.orth_identity(X.gram())

    def vec():
        return smp.vector(rng, p, n, prec)

    for _ in range(cfg.iterations):
        t1, t2, w = vec(), vec(), vec()
        R1, R2 = smp.rotation(rng, V, prec), smp.rotation(rng, V, prec)
        E1, E2 = cf.embed_poincare(X, t1, R1), cf.embed_poincare(X, t2, R2)
        t.record("embedding_homomorphism", E1 @ E2 == cf.embed_poincare(X, la.add(t1, R1.apply(t2)), R1 @ R2))
        t.record("form_preservation", E1.is_orthogonal() and E1.det_sign == 1)
        t.record("fixes_p", la.vec_equal(E1.apply(X.point_p()), X.point_p()))
        Jw = cf.chart_J(X, w)
        t.record("chart_on_cone", X.Q0(Jw.rep).is_zero() and cf.is_in_chart(Jw))
        t.record("chart_bijection", la.vec_equal(cf.unchart(Jw), w))
        t.record("intertwining", cf.act_projective(E1, Jw, X) == cf.chart_J(X, la.add(R1.apply(w), t1)))
        t.record("action_associative", cf.act_projective(E1 @ E2, Jw, X) == cf.act_projective(E1, cf.act_projective(E2, Jw, X), X))
        c = smp.nonzero_scalar(rng, p, prec)
        D = cf.embed_partial(X, c, la.zeros(p, n), cf.orth_identity(V.gram()))
        t.record("dilation", cf.act_projective(D, Jw, X) == cf.chart_J(X, la.scale(c, w)))
        t.record("semidirect_relation", D @ E1 @ D.inverse() == cf.embed_poincare(X, la.scale(c, t1), R1))
        F = cf.embed_partial(X, c, t1, R1)
        t.record("partial_form_preservation", F.is_orthogonal() and F.det_sign == 1)
        t.record("stabilizes_p_line", cf.act_projective(F, P, X) == P)
        rep = Jw.rep
        t.record("integral_normal_form", all(x.is_zero() or x.val >= 0 for x in rep) and la.min_valuation(rep) == 0)
        W = cf.transitivity_witness(X, P, Jw)
        t.record(
            "transitivity_witness",
            W.is_orthogonal() and W.det_sign == 1 and cf.act_projective(W, P, X) == Jw,
        )
        t.record("poincare_keeps_chart", cf.escape_witness(X, E1) is None)
        esc = cf.escape_witness(X, W)
        t.record("conformal_escape_found", esc is not None and not cf.is_in_chart(cf.act_projective(W, cf.chart_J(X, esc), X)))
    t.record("identity_fixes", cf.act_projective(ident, P, X) == P)
    return t


def suite_negative(cfg: SuiteConfig, prec: int, rng) -> Tally:
    """Controls that must fail; a record passes when the broken object is caught."""
    p, t = cfg.prime, Tally()
    V0 = _galilean_space(rng, p, prec)
    # the sign-flip defect is psi(4 tau eta (v, W v')); a tau of negative
    # valuation keeps it out of Z_p, where psi would hide it
    tau = smp.nonzero_scalar(rng, p, prec) / PAdic.from_rational(p, p**3, 1, prec)
    model = gal.rotation_boost_model(V0)
    n = max(cfg.iterations, 5)

    def rb():
        return smp.rotation_boost(rng, V0, prec)

    shift = la.vector(p, [1] + [0] * V0.dim, prec)
    bad = perturbed(gal.theta_cocycle(tau), model, shift)
    dual = [smp.vector(rng, p, V0.dim + 1, prec) for _ in range(n)]
    t.merge_report(
        "perturbed_cocycle_rejected",
        verify_affine_action(bad, model, [(rb(), rb(), d) for d in dual]),
        expect_pass=False,
    )
    t.merge_report(
        "opposite_sign_theta_rejected",
        verify_cocycle(gal.opposite_sign_cocycle(tau), model, [(rb(), rb()) for _ in range(n)]),
        expect_pass=False,
    )

    def h():
        return gal.as_pair(smp.galilean(rng, V0, prec))

    t.merge_report(
        "sign_flipped_multiplier_rejected",
        verify_multiplier(gal.sign_flipped_multiplier(tau), model, [(h(), h(), h()) for _ in range(n)]),
        expect_pass=False,
    )
    missed = [k for k, c in t.checks.items() if c["failures"]]
    if missed and prec < NEGATIVE_CONTROL_PREC:
        # a defect of high valuation is invisible at low precision
        raise PrecisionError(f"negative controls not resolved at precision {prec}: {missed}")
    # the norm form of the quaternions is anisotropic at every prime
    aniso = QuadSpace.from_rationals(p, _anisotropic_quaternary(p), prec)
    try:
        classify_dual(aniso, la.vector(p, [1, 0, 0, 0], prec))
        t.record("anisotropic_rejected", False)
    except AnisotropicError:
        t.record("anisotropic_rejected", True)
    return t


def _anisotropic_quaternary(p: int) -> list:
    if p == 2:
        return [1, 1, 1, 1]
    u = oracles.square_classes(p)[1]
    return [1, -u, -p, u * p]


SUITES = {
    "padic": suite_padic,
    "quadform": suite_quadform,
    "orthogrp": suite_orthogrp,
    "galilean": suite_galilean,
    "poincare": suite_poincare,
    "conformal": suite_conformal,
    "negative_controls": suite_negative,
}


def run_suite(name: str, cfg: SuiteConfig, **overrides) -> dict:
    """Run one suite, doubling precision after a precision error or a failure.

    Zero/equality decisions made at too low a precision can steer an
    algorithm wrong without raising, so a failed check is also retried from
    the same seed.  Every attempt is listed; a genuine defect fails at all
    precisions and is reported from the last attempt.
    """
    fn = SUITES[name]
    prec = cfg.precision
    attempts = []
    for k in range(MAX_DOUBLINGS + 1):
        final = k == MAX_DOUBLINGS
        rng = smp.rng_for(cfg.seed, name, cfg.prime)
        try:
            tally = fn(cfg, prec, rng, **overrides)
        except (PrecisionError, DegenerateFormError, NotOrthogonalError) as exc:
            attempts.append({"precision": prec, "outcome": type(exc).__name__})
            if final:
                raise PrecisionError(f"suite {name} exhausted precision at {prec}: {exc}") from exc
            prec *= 2
            continue
        checks = tally.report()
        failures = sum(c["failures"] for c in checks.values())
        attempts.append({"precision": prec, "outcome": "failed" if failures else "passed"})
        if failures and not final:
            prec *= 2
            continue
        return {
            "precision_used": prec,
            "attempts": attempts,
            "checks": checks,
            "failures": failures,
            "passed": failures == 0,
        }


def run_all(cfg: SuiteConfig, names=None) -> dict:
    names = list(SUITES) if names is None else list(names)
    results = {name: run_suite(name, cfg) for name in names}
    return {
        "config": {
            "prime": cfg.prime,
            "precision": cfg.precision,
            "seed": cfg.seed,
            "iterations": cfg.iterations,
        },
        "suites": results,
        "passed": all(r["passed"] for r in results.values()),
    }

