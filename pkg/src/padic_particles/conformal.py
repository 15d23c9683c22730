"""Conformal spacetime: the projective null cone of V + (hyperbolic plane).

Coordinates on the extended space are (alpha, beta, w) for alpha p + beta q + w
with p, q null, B(p, q) = 1 and both orthogonal to V, so the extended form is
Q0 = 2 alpha beta + Q(w).  The chart J(w) = [-Q(w)/2 : 1 : w] identifies V with
the null lines not orthogonal to p.

The Poincare element (t, R) embeds as the block matrix

    [[1, -Q(t)/2, e], [0, 1, 0], [0, t, R]],   e(v) = -(t, R v),

the minus sign being the one that makes the matrix orthogonal for Q0.  With it
embed(t, R) J(w) = J(R w + t).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg as la
from .orthogrp import OrthMatrix, fix_determinant, witt_extension
from .orthogrp import identity as orth_identity
from .padic import PAdic, PrecisionError
from .quadform import QuadSpace, diagonalize, isotropic_vector, is_isotropic, witt_decompose

SIGN_CONVENTION = "e(t,R)(v) = -(t,Rv)"


@dataclass(frozen=True)
class ExtendedSpace:
    base: QuadSpace

    @property
    def p(self) -> int:
        return self.base.prime

    @property
    def dim(self) -> int:
        return self.base.dim + 2

    def gram(self):
        p, n = self.p, self.base.dim
        z = PAdic.zero(p)
        one = PAdic.one(p, max((a.prec for a in self.base.diag), default=32))
        rows = [[z] * (n + 2) for _ in range(n + 2)]
        rows[0][1] = rows[1][0] = one
        for i, a in enumerate(self.base.diag):
            rows[i + 2][i + 2] = a
        return tuple(tuple(r) for r in rows)

    def Q0(self, x) -> PAdic:
        return 2 * x[0] * x[1] + self.base.Q(x[2:])

    def B0(self, x, y) -> PAdic:
        return x[0] * y[1] + x[1] * y[0] + self.base.B(x[2:], y[2:])

    def witt_index(self) -> int:
        return witt_decompose(diagonalize(self.gram(), self.p)).witt_index

    def point_p(self) -> tuple:
        return la.vector(self.p, [1, 0] + [0] * self.base.dim)

    def point_q(self) -> tuple:
        return la.vector(self.p, [0, 1] + [0] * self.base.dim)


@dataclass(frozen=True, eq=False)
class ProjPoint:
    """A null line, stored with the coordinate of least valuation scaled to 1."""

    rep: tuple

    @classmethod
    def from_vector(cls, X: ExtendedSpace, x) -> ProjPoint:
        x = tuple(x)
        if len(x) != X.dim:
            raise ValueError("vector has the wrong dimension")
        m = la.min_valuation(x)
        if m == la.INF:
            raise PrecisionError("vector is zero to working precision")
        if not X.Q0(x).is_zero():
            raise ValueError("vector is not on the null cone")
        k = next(i for i, c in enumerate(x) if not c.is_zero() and c.val == m)
        return cls(la.scale(x[k].inverse(), x))

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return la.vec_equal(self.rep, other.rep)

    __hash__ = None

    def to_json(self) -> list:
        return [str(c.to_fraction()) for c in self.rep]


def embed_poincare(X: ExtendedSpace, t, R: OrthMatrix) -> OrthMatrix:
    V = X.base
    if not R.is_orthogonal() or R.det_sign != 1:
        raise ValueError("R must be special orthogonal on the base space")
    return _embed(X, PAdic.one(X.p, _prec(V)), tuple(t), R)


def embed_partial(X: ExtendedSpace, c: PAdic, t, R: OrthMatrix) -> OrthMatrix:
    """diag(c, 1/c, I) embed(t, R): acts on the chart as w -> c (R w + t)."""
    if c.is_zero():
        raise ValueError("dilation factor must be nonzero")
    if not R.is_orthogonal() or R.det_sign != 1:
        raise ValueError("R must be special orthogonal on the base space")
    return _embed(X, c, tuple(t), R)


def _prec(V: QuadSpace) -> int:
    return max((a.prec for a in V.diag), default=32)


def _embed(X: ExtendedSpace, c: PAdic, t, R: OrthMatrix) -> OrthMatrix:
    V, p, n = X.base, X.p, X.base.dim
    z = PAdic.zero(p)
    At = tuple(a * ti for a, ti in zip(V.diag, t))  # t^T A
    e = la.matvec(la.transpose(R.entries), At)  # v -> (t, R v)
    top = (c, -c * V.Q(t) / 2) + tuple(-c * ei for ei in e)
    mid = (z, c.inverse()) + (z,) * n
    rest = tuple((z, t[i]) + tuple(R.entries[i]) for i in range(n))
    return OrthMatrix(X.gram(), (top, mid) + rest)


def chart_J(X: ExtendedSpace, w) -> ProjPoint:
    w = tuple(w)
    p = X.p
    one = PAdic.one(p, _prec(X.base))
    return ProjPoint.from_vector(X, (-X.base.Q(w) / 2, one) + w)


def is_in_chart(x: ProjPoint) -> bool:
    """(p, x) != 0, i.e. the beta coordinate is nonzero."""
    b = x.rep[1]
    if b.is_zero() and not b.is_exact_zero() and b.absprec <= 0:
        raise PrecisionError("beta coordinate cannot be decided at this precision")
    return not b.is_zero()


def unchart(x: ProjPoint):
    if not is_in_chart(x):
        raise ValueError("point lies at infinity, outside the chart")
    b = x.rep[1]
    return tuple(c / b for c in x.rep[2:])


def act_projective(M: OrthMatrix, x: ProjPoint, X: ExtendedSpace) -> ProjPoint:
    return ProjPoint.from_vector(X, M.apply(x.rep))


def transitivity_witness(X: ExtendedSpace, x: ProjPoint, y: ProjPoint) -> OrthMatrix:
    """An element of SO(V0) carrying the line x to the line y."""
    gram = X.gram()
    if x == y:
        return orth_identity(gram)
    M = witt_extension(gram, [(x.rep, y.rep)])
    return fix_determinant(M, [y.rep])


def escape_witness(X: ExtendedSpace, M: OrthMatrix):
    """A chart point w with M J(w) at infinity, or None.

    Lines at infinity are tried in turn ([p] first); w = unchart(M^-1 z)
    works whenever M^-1 z lands in the chart.
    """
    Minv = M.inverse()
    targets = [X.point_p()]
    if is_isotropic(X.base):
        p = X.p
        r = isotropic_vector(X.base).vector
        targets.append((PAdic.one(p), PAdic.zero(p)) + tuple(r))
        targets.append((PAdic.zero(p), PAdic.zero(p)) + tuple(r))
    for z in targets:
        x = ProjPoint.from_vector(X, Minv.apply(z))
        if is_in_chart(x):
            w = unchart(x)
            if not is_in_chart(act_projective(M, chart_J(X, w), X)):
                return w
    return None
