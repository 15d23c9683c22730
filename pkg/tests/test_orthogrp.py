from fractions import Fraction

import pytest

from conftest import pa, space, vec
from padic_particles import linalg as la
from padic_particles import sampling
from padic_particles.orthogrp import (
    NotOrthogonalError,
    OrthMatrix,
    SL2Element,
    cartan_dieudonne,
    fix_determinant,
    identity,
    in_spin_image,
    killing_gram,
    product_of_reflections,
    reflection,
    sl2_adjoint,
    spinor_norm,
    torus_element,
    witt_extension,
)
from padic_particles.padic import SquareClass, is_square, square_class_of, square_class_reps


# -- independent Killing form: trace(ad u . ad v) over Q --------------------------

_BASIS = (((0, 1), (0, 0)), ((1, 0), (0, -1)), ((0, 0), (1, 0)))


def _mm(a, b):
    return tuple(tuple(sum(Fraction(a[i][k]) * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def _bracket(a, b):
    x, y = _mm(a, b), _mm(b, a)
    return tuple(tuple(x[i][j] - y[i][j] for j in range(2)) for i in range(2))


def _coords(z):
    return (z[0][1], z[0][0], z[1][0])


def _ad(u):
    cols = [_coords(_bracket(u, b)) for b in _BASIS]
    return [[cols[j][i] for j in range(3)] for i in range(3)]


def _killing_oracle():
    ads = [_ad(b) for b in _BASIS]
    out = []
    for A in ads:
        row = []
        for B in ads:
            row.append(sum(A[i][k] * B[k][i] for i in range(3) for k in range(3)))
        out.append(row)
    return out


def test_killing_gram_matches_trace_form():
    K = _killing_oracle()
    assert K == [[0, 0, 4], [0, 8, 0], [4, 0, 0]]
    G = killing_gram(5)
    assert all(G[i][j] == K[i][j] for i in range(3) for j in range(3))


# -- reflections ------------------------------------------------------------------


def test_reflection_example():
    V = space(5, [1, 1])
    r = reflection(V.gram(), vec(5, [1, 0]))
    assert la.mat_equal(r.entries, la.diagonal([pa(5, -1), pa(5, 1)]))
    assert r.det_sign == -1


def test_reflection_null_vector_rejected():
    V = space(5, [1, -1])
    with pytest.raises(ValueError):
        reflection(V.gram(), vec(5, [1, 1]))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_reflection_properties(p, rng):
    for _ in range(50):
        V = sampling.diag_form(rng, p, rng.randint(2, 4), 32)
        v = sampling.anisotropic_vector(rng, V, 32)
        r = reflection(V.gram(), v)
        assert la.vec_equal(r.apply(v), la.neg(v))
        assert r @ r == identity(V.gram())
        assert r.is_orthogonal()
        assert r.det_sign == -1


# -- Cartan-Dieudonne and spinor norm ---------------------------------------------


def test_cartan_dieudonne_identity():
    V = space(5, [1, 2, 3])
    assert cartan_dieudonne(identity(V.gram())) == []


def test_cartan_dieudonne_single_reflection():
    V = space(7, [1, 3, 7])
    v = vec(7, [1, 2, 0])
    us = cartan_dieudonne(reflection(V.gram(), v))
    assert len(us) == 1
    u = us[0]
    # u is a multiple of v
    assert la.vec_equal(la.scale(v[0], u), la.scale(u[0], v))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_cartan_dieudonne_recomposes(p, rng):
    for _ in range(15):
        n = rng.randint(2, 4)
        V = sampling.diag_form(rng, p, n, 40)
        vs = [sampling.anisotropic_vector(rng, V, 40) for _ in range(rng.randint(1, 4))]
        M = product_of_reflections(V.gram(), vs)
        us = cartan_dieudonne(M)
        assert len(us) <= n
        assert len(us) % 2 == (0 if M.det_sign == 1 else 1)
        assert product_of_reflections(V.gram(), us) == M


def test_spinor_norm_examples():
    V = space(5, [1, 2, 3])
    assert spinor_norm(identity(V.gram())).is_trivial()
    v, w = vec(5, [1, 1, 0]), vec(5, [0, 1, 1])
    M = reflection(V.gram(), v) @ reflection(V.gram(), w)
    assert spinor_norm(M) == square_class_of(V.Q(v) * V.Q(w))


def test_spinor_norm_rejects_improper():
    V = space(5, [1, 2, 3])
    with pytest.raises(NotOrthogonalError):
        spinor_norm(reflection(V.gram(), vec(5, [1, 0, 0])))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_torus_spinor_norm(p):
    for alpha in square_class_reps(p):
        a = pa(p, alpha)
        assert spinor_norm(torus_element(a)) == SquareClass(p, alpha)
        assert in_spin_image(torus_element(a)) == is_square(a)


def test_non_square_torus_not_in_image():
    u = square_class_reps(5)[1]
    assert not in_spin_image(torus_element(pa(5, u * 5)))
    assert in_spin_image(identity(killing_gram(5)))


@pytest.mark.parametrize("p", [2, 5, 7])
def test_spinor_norm_multiplicative_and_decomposition_free(p, rng):
    for _ in range(10):
        V = sampling.diag_form(rng, p, 3, 40)
        M = sampling.rotation(rng, V, 40)
        N = sampling.rotation(rng, V, 40)
        assert spinor_norm(M @ N) == spinor_norm(M) * spinor_norm(N)
        assert spinor_norm(M, seed=1) == spinor_norm(M, seed=None)


# -- the SL(2) covering -----------------------------------------------------------


def test_adjoint_identity():
    g = SL2Element.from_rationals(5, 1, 0, 0)
    assert sl2_adjoint(g) == identity(killing_gram(5))


def test_adjoint_of_diagonal():
    a = pa(5, 3)
    g = SL2Element(a, pa(5, 0), pa(5, 0), a.inverse())
    expected = la.diagonal([a * a, pa(5, 1), (a * a).inverse()])
    assert la.mat_equal(sl2_adjoint(g).entries, expected)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_adjoint_entries(p, rng):
    for _ in range(20):
        g = sampling.sl2(rng, p, 32)
        a, b, c, d = g.a, g.b, g.c, g.d
        M = sl2_adjoint(g).entries
        # the seven entries shared with the printed formula
        assert M[0][0] == a * a and M[0][1] == -2 * a * b and M[0][2] == -b * b
        assert M[1][0] == -a * c and M[1][2] == b * d
        assert M[2][0] == -c * c and M[2][2] == d * d
        # the two derived from the commutators directly
        assert M[1][1] == a * d + b * c
        assert M[2][1] == 2 * c * d


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_adjoint_homomorphism_and_image(p, rng):
    for _ in range(100 if p == 5 else 25):
        g, h = sampling.sl2(rng, p, 32), sampling.sl2(rng, p, 32)
        Ag = sl2_adjoint(g)
        assert Ag.is_orthogonal()
        assert Ag.det_sign == 1
        assert sl2_adjoint(g @ h) == Ag @ sl2_adjoint(h)
        assert sl2_adjoint(-g) == Ag


@pytest.mark.parametrize("p", [2, 3, 5])
def test_adjoint_lands_in_spin_image(p, rng):
    for _ in range(30):
        assert in_spin_image(sl2_adjoint(sampling.sl2(rng, p, 40)))


def test_sl2_requires_unit_determinant():
    with pytest.raises(ValueError):
        SL2Element(pa(5, 1), pa(5, 1), pa(5, 1), pa(5, 1))


# -- Witt extension -----------------------------------------------------------------


def test_witt_extension_examples():
    V = space(5, [1, 1])
    x = vec(5, [1, 0])
    assert witt_extension(V.gram(), [(x, x)]) == identity(V.gram())
    M = witt_extension(V.gram(), [(x, la.neg(x))])
    assert M == reflection(V.gram(), x)


def test_witt_extension_rejects_mismatch():
    V = space(5, [1, 1])
    with pytest.raises(ValueError):
        witt_extension(V.gram(), [(vec(5, [1, 0]), vec(5, [1, 1]))])


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_witt_extension_random(p, rng):
    done = 0
    while done < 25:
        V = sampling.diag_form(rng, p, rng.randint(2, 4), 40)
        x = sampling.vector(rng, p, V.dim, 40)
        if all(c.is_zero() for c in x):
            continue
        R = sampling.rotation(rng, V, 40)
        y = R.apply(x)
        M = witt_extension(V.gram(), [(x, y)])
        assert la.vec_equal(M.apply(x), y)
        assert M.is_orthogonal()
        S = fix_determinant(M, [y])
        assert S.det_sign == 1 and la.vec_equal(S.apply(x), y)
        done += 1


def test_witt_extension_null_pair():
    V = space(5, [1, -1, 1])
    x, y = vec(5, [1, 1, 0]), vec(5, [1, -1, 0])
    M = witt_extension(V.gram(), [(x, y)])
    assert la.vec_equal(M.apply(x), y) and M.is_orthogonal()


def test_orth_matrix_json():
    V = space(5, [1, 1])
    r = reflection(V.gram(), vec(5, [1, 0]))
    assert r.to_json() == [["-1", "0"], ["0", "1"]]
    assert isinstance(r, OrthMatrix)
