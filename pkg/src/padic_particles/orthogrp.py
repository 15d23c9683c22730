"""Orthogonal groups over Q_p: reflections, Cartan-Dieudonne, spinor norm.

Also the adjoint covering SL(2, Q_p) -> SO(sl_2, Killing form), whose image
is the kernel of the spinor norm; this is what makes the covering fail to be
onto (diag(alpha, 1, 1/alpha) is hit only for square alpha).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import linalg as la
from .padic import DEFAULT_PREC, PAdic, PrecisionError, SquareClass, square_class_of
from .quadform import orthogonal_basis


class NotOrthogonalError(ValueError):
    pass


@dataclass(frozen=True)
class OrthMatrix:
    gram: tuple
    entries: tuple

    @property
    def p(self) -> int:
        return self.gram[0][0].p

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def det_sign(self) -> int:
        d = la.det(self.entries)
        if d.is_zero():
            raise PrecisionError("determinant vanishes to working precision")
        if d == 1:
            return 1
        if d == -1:
            return -1
        raise NotOrthogonalError("determinant is not +-1 to working precision")

    def is_orthogonal(self) -> bool:
        m = self.entries
        return la.mat_equal(la.matmul(la.transpose(m), la.matmul(self.gram, m)), self.gram)

    def check(self) -> OrthMatrix:
        if not self.is_orthogonal():
            raise NotOrthogonalError("matrix does not preserve the form")
        return self

    def apply(self, x):
        return la.matvec(self.entries, x)

    def __matmul__(self, other: OrthMatrix) -> OrthMatrix:
        return OrthMatrix(self.gram, la.matmul(self.entries, other.entries))

    def inverse(self) -> OrthMatrix:
        # M^-1 = A^-1 M^T A
        ainv = la.inverse(self.gram)
        return OrthMatrix(
            self.gram, la.matmul(ainv, la.matmul(la.transpose(self.entries), self.gram))
        )

    def __eq__(self, other):
        if not isinstance(other, OrthMatrix):
            return NotImplemented
        return la.mat_equal(self.entries, other.entries)

    __hash__ = None

    def to_json(self) -> list:
        return [[str(x.to_fraction()) for x in row] for row in self.entries]


def identity(gram) -> OrthMatrix:
    return OrthMatrix(gram, la.identity(gram[0][0].p, len(gram)))


def reflection(gram, v) -> OrthMatrix:
    """r_v(x) = x - 2 B(x, v) / Q(v) * v."""
    q = la.quad(gram, v)
    if q.is_zero():
        raise ValueError("cannot reflect in a null vector")
    av = la.matvec(gram, v)
    c = 2 / q
    n = len(v)
    ident = la.identity(v[0].p, n)
    entries = tuple(
        tuple(ident[i][j] - c * v[i] * av[j] for j in range(n)) for i in range(n)
    )
    return OrthMatrix(gram, entries)


def product_of_reflections(gram, vectors) -> OrthMatrix:
    out = identity(gram)
    for v in vectors:
        out = out @ reflection(gram, v)
    return out


def _shrink(gram, W, x, p):
    """Orthogonal basis of the part of span(W) orthogonal to x."""
    bx = [la.bilinear(gram, w, x) for w in W]
    nz = [i for i, b in enumerate(bx) if not b.is_zero()]
    if not nz:
        return list(W)
    j = min(nz, key=lambda i: bx[i].val)
    rest = []
    for i, w in enumerate(W):
        if i == j:
            continue
        c = bx[i] / bx[j]
        rest.append(la.sub(w, la.scale(c, W[j])) if not c.is_zero() else w)
    return orthogonal_basis(gram, rest, p) if rest else []


def _candidates(W):
    yield from W
    for i in range(len(W)):
        for j in range(i + 1, len(W)):
            yield la.add(W[i], W[j])
            yield la.sub(W[i], W[j])


def _decompose(M: OrthMatrix, start_basis) -> list:
    gram, p = M.gram, M.p
    tau = M.entries
    W = orthogonal_basis(gram, start_basis, p)
    vecs = []
    twisted = False
    while W:
        images = [la.matvec(tau, w) for w in W]
        if all(la.vec_equal(a, w) for a, w in zip(images, W)):
            break
        fixed = move = None
        for x in _candidates(W):
            if la.quad(gram, x).is_zero():
                continue
            tx = la.matvec(tau, x)
            if la.vec_equal(tx, x):
                fixed = x
                break
            if move is None:
                u = la.sub(x, tx)
                if not la.quad(gram, u).is_zero():
                    move = (x, u)
        if fixed is not None:
            W = _shrink(gram, W, fixed, p)
            continue
        if move is not None:
            x, u = move
            vecs.append(u)
            tau = la.matmul(reflection(gram, u).entries, tau)
            W = _shrink(gram, W, x, p)
            twisted = False
            continue
        if not twisted:
            # every anisotropic x has tau x - x null: twist by one reflection
            z = W[0]
            vecs.append(z)
            tau = la.matmul(reflection(gram, z).entries, tau)
            twisted = True
            continue
        x = W[0]
        s = la.add(x, la.matvec(tau, x))
        if la.quad(gram, s).is_zero():
            raise PrecisionError("reflection decomposition stalled at working precision")
        vecs.extend([x, s])
        tau = la.matmul(reflection(gram, x).entries, la.matmul(reflection(gram, s).entries, tau))
        W = _shrink(gram, W, x, p)
        twisted = False
    return vecs


def cartan_dieudonne(M: OrthMatrix, seed: int | None = None) -> list:
    """Vectors u_1..u_k with M = r_{u_1} ... r_{u_k}, k <= dim when found.

    ``seed`` selects a randomized starting basis, giving a decomposition
    computed independently of the default one.
    """
    p, n = M.p, M.n
    rng = random.Random(seed)
    best = None
    for attempt in range(6):
        if seed is None and attempt == 0:
            start = la.identity(p, n)
        else:
            start = _random_basis(p, n, rng)
        vecs = _decompose(M, start)
        if best is None or len(vecs) < len(best):
            best = vecs
        if len(best) <= n:
            break
    return best


def _random_basis(p, n, rng):
    while True:
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        m = la.matrix(p, rows)
        if not la.det(m).is_zero():
            return m


def spinor_norm(M: OrthMatrix, seed: int | None = None) -> SquareClass:
    if M.det_sign != 1:
        raise NotOrthogonalError("spinor norm is defined on SO only")
    out = SquareClass(M.p, 1)
    for u in cartan_dieudonne(M, seed):
        out = out * square_class_of(la.quad(M.gram, u))
    return out


# -- SL(2) and the adjoint covering -------------------------------------------


@dataclass(frozen=True)
class SL2Element:
    a: PAdic
    b: PAdic
    c: PAdic
    d: PAdic

    def __post_init__(self):
        if not (self.a * self.d - self.b * self.c) == 1:
            raise ValueError("determinant is not 1")

    @classmethod
    def from_rationals(cls, p, a, b, c, prec=DEFAULT_PREC):
        """Complete (a, b, c) to an element of SL(2) with d = (1 + bc) / a."""
        a, b, c = (la.const(p, x, prec) for x in (a, b, c))
        return cls(a, b, c, (1 + b * c) / a)

    def matrix(self):
        return ((self.a, self.b), (self.c, self.d))

    def __matmul__(self, other: SL2Element) -> SL2Element:
        m = la.matmul(self.matrix(), other.matrix())
        return SL2Element(m[0][0], m[0][1], m[1][0], m[1][1])

    def __neg__(self):
        return SL2Element(-self.a, -self.b, -self.c, -self.d)


def sl2_basis(p: int, prec: int = DEFAULT_PREC):
    """X, H, Y as 2x2 matrices."""
    X = la.matrix(p, [[0, 1], [0, 0]], prec)
    H = la.matrix(p, [[1, 0], [0, -1]], prec)
    Y = la.matrix(p, [[0, 0], [1, 0]], prec)
    return X, H, Y


def killing_gram(p: int, prec: int = DEFAULT_PREC):
    """Killing form on (X, H, Y): K(H,H) = 8, K(X,Y) = K(Y,X) = 4."""
    return la.matrix(p, [[0, 0, 4], [0, 8, 0], [4, 0, 0]], prec)


def _sl2_coords(z):
    # z = [[h, x], [y, -h]] = x X + h H + y Y
    return (z[0][1], z[0][0], z[1][0])


def sl2_adjoint(g: SL2Element) -> OrthMatrix:
    """Matrix of Ad(g): Z -> g Z g^-1 on the ordered basis X, H, Y."""
    p = g.a.p
    m = g.matrix()
    minv = ((g.d, -g.b), (-g.c, g.a))
    cols = [_sl2_coords(la.matmul(m, la.matmul(z, minv))) for z in sl2_basis(p)]
    entries = tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))
    return OrthMatrix(killing_gram(p), entries)


def torus_element(alpha: PAdic) -> OrthMatrix:
    """diag(alpha, 1, 1/alpha) in SO of the Killing form."""
    p = alpha.p
    one, zero = PAdic.one(p, alpha.prec), PAdic.zero(p)
    entries = ((alpha, zero, zero), (zero, one, zero), (zero, zero, alpha.inverse()))
    return OrthMatrix(killing_gram(p), entries)


def in_spin_image(M: OrthMatrix) -> bool:
    """Whether M lies in the image of the spin covering (spinor norm trivial)."""
    if M.det_sign != 1:
        return False
    return spinor_norm(M).is_trivial()


# -- Witt extension -------------------------------------------------------------


def _complement(gram, vectors, p):
    if not vectors:
        return list(la.identity(p, len(gram)))
    rows = tuple(la.matvec(gram, v) for v in vectors)
    return la.nullspace(rows, p)


def _orthogonal_to(gram, xs, p):
    """Anisotropic vectors orthogonal to every x in xs (a small candidate pool)."""
    basis = _complement(gram, xs, p)
    pool = list(basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            pool.append(la.add(basis[i], basis[j]))
            pool.append(la.sub(basis[i], basis[j]))
    return [w for w in pool if not la.quad(gram, w).is_zero()]


def witt_extension(gram, pairs) -> OrthMatrix:
    """An isometry M of the whole space with M x_i = y_i for each pair.

    Built by chaining reflections; each new reflection fixes the targets
    already placed.
    """
    p = gram[0][0].p
    xs = [x for x, _ in pairs]
    ys = [y for _, y in pairs]
    for i in range(len(pairs)):
        for j in range(i, len(pairs)):
            if not la.bilinear(gram, xs[i], xs[j]) == la.bilinear(gram, ys[i], ys[j]):
                raise ValueError("pairs do not preserve inner products")
    if xs:
        _, piv = la.row_reduce(tuple(xs))
        if len(piv) < len(xs):
            raise ValueError("source vectors are linearly dependent")
    M = identity(gram)
    for i, (x, y) in enumerate(pairs):
        placed = ys[:i]
        xp = M.apply(x)
        if la.vec_equal(xp, y):
            continue
        u = la.sub(xp, y)
        if not la.quad(gram, u).is_zero():
            M = reflection(gram, u) @ M
            continue
        for w in _orthogonal_to(gram, placed, p):
            z = reflection(gram, w).apply(xp)
            u = la.sub(z, y)
            if la.vec_equal(z, y):
                M = reflection(gram, w) @ M
                break
            if not la.quad(gram, u).is_zero():
                M = reflection(gram, u) @ reflection(gram, w) @ M
                break
        else:
            raise PrecisionError("no usable reflection found at working precision")
    return M


def fix_determinant(M: OrthMatrix, keep) -> OrthMatrix:
    """Compose with a reflection fixing every vector in ``keep`` to land in SO."""
    if M.det_sign == 1:
        return M
    ws = _orthogonal_to(M.gram, list(keep), M.p)
    if not ws:
        raise PrecisionError("no anisotropic vector orthogonal to the fixed set")
    return reflection(M.gram, ws[0]) @ M
