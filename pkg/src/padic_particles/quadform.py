"""Quadratic spaces over Q_p.

Forms are diagonal, ``Q(x) = sum a_i x_i^2``, with polar form
``B(x, y) = sum a_i x_i y_i`` so that ``B(x, x) = Q(x)``.  The classical
invariants (dimension, discriminant class, Hasse invariant) are complete
for nondegenerate forms over Q_p, and every isotropy decision below is
read off from them.  Null vectors are produced constructively: a bounded
digit-by-digit search finds an approximate zero certified by Hensel's
lemma, and one coordinate is then solved for exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import linalg as la
from .padic import (
    DEFAULT_PREC,
    INF,
    PAdic,
    PrecisionError,
    SquareClass,
    hilbert_symbol,
    square_class_of,
    sqrt,
    valuation,
)


class DegenerateFormError(ValueError):
    pass


class AnisotropicError(ValueError):
    """The operation needs an isotropic space."""


@dataclass(frozen=True)
class QuadSpace:
    prime: int
    diag: tuple

    def __post_init__(self):
        object.__setattr__(self, "diag", tuple(self.diag))
        for a in self.diag:
            if a.p != self.prime:
                raise ValueError("coefficient over the wrong prime")
            if a.is_zero():
                raise DegenerateFormError("diagonal coefficient is zero to working precision")

    @classmethod
    def from_rationals(cls, p: int, coeffs, prec: int = DEFAULT_PREC) -> QuadSpace:
        out = []
        for c in coeffs:
            c = Fraction(c)
            if c == 0:
                raise DegenerateFormError("diagonal coefficient 0 makes the form degenerate")
            out.append(PAdic.from_rational(p, c, 1, prec))
        return cls(p, tuple(out))

    @classmethod
    def from_json(cls, d: dict, prec: int = DEFAULT_PREC) -> QuadSpace:
        return cls.from_rationals(d["p"], [Fraction(s) for s in d["diag"]], prec)

    @property
    def dim(self) -> int:
        return len(self.diag)

    def gram(self):
        if not self.diag:
            return ()
        return la.diagonal(self.diag)

    def Q(self, x) -> PAdic:
        return la.dot([a * xi for a, xi in zip(self.diag, x)], x)

    def B(self, x, y) -> PAdic:
        return la.dot([a * xi for a, xi in zip(self.diag, x)], y)

    def __add__(self, other: QuadSpace) -> QuadSpace:
        # orthogonal sum
        return QuadSpace(self.prime, self.diag + other.diag)


class Invariants(NamedTuple):
    dim: int
    disc: SquareClass
    hasse: int


@dataclass(frozen=True)
class WittData:
    witt_index: int
    kernel: QuadSpace

    @property
    def hyperbolic_count(self) -> int:
        return self.witt_index


@dataclass(frozen=True)
class IsotropyWitness:
    vector: tuple
    absprec: object  # Q(vector) vanishes to this absolute precision
    hensel_certified: bool


# -- diagonalization ----------------------------------------------------------


def orthogonal_basis(gram, vectors: Sequence, p: int) -> list:
    """Orthogonal basis (anisotropic vectors) of the span of ``vectors``.

    The span must be nondegenerate for the form given by ``gram``.
    """
    todo = [tuple(v) for v in vectors]
    out = []
    while todo:
        n = len(todo)
        g = [[la.bilinear(gram, todo[i], todo[j]) for j in range(n)] for i in range(n)]
        di = min(
            (i for i in range(n) if not g[i][i].is_zero()),
            key=lambda i: g[i][i].val,
            default=None,
        )
        off = min(
            ((i, j) for i in range(n) for j in range(i + 1, n) if not g[i][j].is_zero()),
            key=lambda ij: g[ij[0]][ij[1]].val,
            default=None,
        )
        if di is None and off is None:
            raise PrecisionError("form is degenerate to working precision on this span")
        use_pair = off is not None and (
            di is None or (p != 2 and g[off[0]][off[1]].val < g[di][di].val)
        )
        if use_pair:
            i, j = off
            piv = la.add(todo[i], todo[j])
            if la.quad(gram, piv).is_zero():
                piv = la.sub(todo[i], todo[j])
            rest = [todo[k] for k in range(n) if k != i]
        else:
            piv = todo[di]
            rest = [todo[k] for k in range(n) if k != di]
        qp = la.quad(gram, piv)
        if qp.is_zero():
            raise PrecisionError("no anisotropic pivot at working precision")
        out.append(piv)
        todo = []
        for b in rest:
            c = la.bilinear(gram, b, piv) / qp
            todo.append(la.sub(b, la.scale(c, piv)) if not c.is_zero() else b)
    return out


def diagonalize_with_basis(gram, p: int):
    n = len(gram)
    basis = orthogonal_basis(gram, la.identity(p, n), p)
    return [la.quad(gram, b) for b in basis], basis


def diagonalize(gram, p: int | None = None) -> QuadSpace:
    """Congruent diagonal form of a symmetric Gram matrix."""
    p = p if p is not None else gram[0][0].p
    diag, _ = diagonalize_with_basis(gram, p)
    return QuadSpace(p, tuple(diag))


def restrict(gram, vectors, p: int) -> QuadSpace:
    """Diagonal form of the restriction of ``gram`` to span(vectors)."""
    if not vectors:
        return QuadSpace(p, ())
    basis = orthogonal_basis(gram, vectors, p)
    return QuadSpace(p, tuple(la.quad(gram, b) for b in basis))


# -- invariants ---------------------------------------------------------------


def discriminant(V: QuadSpace) -> SquareClass:
    d = PAdic.one(V.prime)
    for a in V.diag:
        d = d * a
    return square_class_of(d)


def hasse_invariant(V: QuadSpace) -> int:
    h = 1
    for a, b in itertools.combinations(V.diag, 2):
        h *= hilbert_symbol(a, b)
    return h


def invariants(V: QuadSpace) -> Invariants:
    return Invariants(V.dim, discriminant(V), hasse_invariant(V))


def _symbol(p: int, a: int, b) -> int:
    b = b if isinstance(b, PAdic) else PAdic.from_rational(p, b, 1, 8)
    return hilbert_symbol(PAdic.from_rational(p, a, 1, 8), b)


def is_isotropic(V: QuadSpace) -> bool:
    n = V.dim
    if n <= 1:
        return False
    if n >= 5:
        return True
    d = discriminant(V)
    if n == 2:
        return (SquareClass(V.prime, -1) * d).is_trivial()
    h = hasse_invariant(V)
    minus_d = (SquareClass(V.prime, -1) * d).representative
    if n == 3:
        return h == _symbol(V.prime, -1, minus_d)
    return not d.is_trivial() or h == _symbol(V.prime, -1, -1)


# -- null vectors -------------------------------------------------------------


def normalize(V: QuadSpace):
    """Scale coefficients by even powers of p so every valuation is 0 or 1.

    Returns ``(W, shifts)`` with ``a_i = p**(2*shifts[i]) * w_i``; a vector
    ``y`` for W corresponds to ``x_i = y_i / p**shifts[i]`` for V.
    """
    p = V.prime
    shifts, out = [], []
    for a in V.diag:
        k = a.val // 2
        shifts.append(k)
        out.append(PAdic(p, a.val - 2 * k, a.unit, a.prec))
    return QuadSpace(p, tuple(out)), shifts


def _int_coeff(a: PAdic) -> int:
    return a.p**a.val * a.unit


def _hensel_index(p: int, coeffs, x, cap: int):
    q = sum(c * xi * xi for c, xi in zip(coeffs, x))
    vq = cap if q == 0 else min(valuation(q, p), cap)
    two = 1 if p == 2 else 0
    for i, (c, xi) in enumerate(zip(coeffs, x)):
        if xi % p**cap == 0:
            continue
        if vq > 2 * (two + valuation(c, p) + valuation(xi, p)):
            return i
    return None


def _digit_search(p: int, coeffs, depth: int, cap: int):
    """Find an integer vector certified (by Hensel) to lie near a null vector.

    Primitive vectors are normalized so their first unit coordinate is 1;
    candidates are extended one p-adic digit at a time and pruned as soon
    as Q(x) fails to vanish to the current level.
    """
    n = len(coeffs)

    def Qmod(x, k):
        return sum(c * xi * xi for c, xi in zip(coeffs, x)) % p**k

    def dfs(x, k):
        i = _hensel_index(p, coeffs, x, cap)
        if i is not None:
            return x, i
        if k >= depth:
            return None
        step = p**k
        free = [j for j in range(n) if j != lead]
        for digits in itertools.product(range(p), repeat=len(free)):
            y = list(x)
            for j, d in zip(free, digits):
                y[j] += d * step
            if Qmod(y, k + 1) == 0:
                hit = dfs(y, k + 1)
                if hit:
                    return hit
        return None

    for lead in range(n):
        tail = n - lead - 1
        for digits in itertools.product(range(p), repeat=tail):
            x = [0] * lead + [1] + list(digits)
            if Qmod(x, 1) == 0:
                hit = dfs(x, 1)
                if hit:
                    return hit
    return None


def _search_bound(W: QuadSpace) -> int:
    # 2 * v_p(2 * disc) + 3 digits
    vdisc = sum(a.val for a in W.diag)
    v2 = 1 if W.prime == 2 else 0
    return 2 * (v2 + vdisc) + 3


def _isotropic_subset(W: QuadSpace):
    n = W.dim
    for size in (2, 3, 4):
        if size > n:
            break
        for idx in itertools.combinations(range(n), size):
            if is_isotropic(QuadSpace(W.prime, tuple(W.diag[i] for i in idx))):
                return idx
    return tuple(range(5))


def _primitive(x):
    m = la.min_valuation(x)
    if m == INF:
        raise PrecisionError("vector vanishes to working precision")
    p = x[0].p
    if m == 0:
        return tuple(x)
    s = PAdic(p, -m, 1, max(xi.prec for xi in x if not xi.is_zero()))
    return tuple(s * xi for xi in x)


def isotropic_vector(V: QuadSpace) -> IsotropyWitness:
    if not is_isotropic(V):
        raise AnisotropicError("form is anisotropic; it has no null vector")
    p = V.prime
    W, shifts = normalize(V)
    idx = _isotropic_subset(W)
    sub = [W.diag[i] for i in idx]
    y_sub: list
    if len(idx) == 2:
        r = sqrt(-sub[1] / sub[0])
        y_sub = [r, PAdic.one(p, r.prec)]
        certified = True
    else:
        cap = min(a.absprec for a in sub)
        coeffs = [_int_coeff(a) for a in sub]
        bound = _search_bound(QuadSpace(p, tuple(sub)))
        hit = _digit_search(p, coeffs, bound, cap)
        if hit is None and cap <= bound:
            raise PrecisionError("too few digits to certify a null vector")
        if hit is None:
            raise RuntimeError("isotropy criteria and bounded null-vector search disagree")
        x_int, i = hit
        prec = max(a.prec for a in sub)
        y_sub = [PAdic.from_rational(p, xi, 1, prec) if xi else PAdic.zero(p) for xi in x_int]
        rest = PAdic.zero(p)
        for j, (c, yj) in enumerate(zip(sub, y_sub)):
            if j != i:
                rest = rest + c * yj * yj
        root = sqrt(-rest / sub[i])
        approx = PAdic.from_rational(p, x_int[i], 1, prec)
        if (root - approx).val < (-root - approx).val:
            root = -root
        y_sub[i] = root
        certified = True
    y = [PAdic.zero(p)] * V.dim
    for j, i in enumerate(idx):
        y[i] = y_sub[j]
    x = [yi / PAdic(p, k, 1, DEFAULT_PREC) if k else yi for yi, k in zip(y, shifts)]
    x = _primitive(x)
    q = V.Q(x)
    if not q.is_zero():
        raise PrecisionError("null vector lost to precision")
    return IsotropyWitness(tuple(x), q.absprec, certified)


def hyperbolic_partner(gram, v):
    """Null w with B(v, w) = 1 for a null vector v."""
    p = v[0].p
    av = la.matvec(gram, v)
    j = min((k for k in range(len(av)) if not av[k].is_zero()), key=lambda k: av[k].val)
    w = [PAdic.zero(p)] * len(v)
    w[j] = av[j].inverse()
    w = tuple(w)
    c = la.quad(gram, w) / 2
    return la.sub(w, la.scale(c, v))


def complement_basis(gram, vectors, p: int) -> list:
    """Basis of the orthogonal complement of span(vectors)."""
    rows = tuple(la.matvec(gram, v) for v in vectors)
    return la.nullspace(rows, p)


def _split_plane(V: QuadSpace, v) -> QuadSpace:
    gram = V.gram()
    w = hyperbolic_partner(gram, v)
    return restrict(gram, complement_basis(gram, [v, w], V.prime), V.prime)


def witt_decompose(V: QuadSpace) -> WittData:
    index, cur = 0, V
    while is_isotropic(cur):
        v = isotropic_vector(cur).vector
        cur = _split_plane(cur, v)
        index += 1
    return WittData(index, cur)


def hyperbolic(p: int, count: int, prec: int = DEFAULT_PREC) -> QuadSpace:
    return QuadSpace.from_rationals(p, [1, -1] * count, prec) if count else QuadSpace(p, ())


def kernel_invariants(V: QuadSpace) -> Invariants:
    return invariants(witt_decompose(V).kernel)


def witt_equivalent(V: QuadSpace, W: QuadSpace) -> bool:
    return kernel_invariants(V) == kernel_invariants(W)


def represents(V: QuadSpace, m: PAdic) -> bool:
    if m.is_zero():
        raise PrecisionError("value is zero to working precision")
    return is_isotropic(QuadSpace(V.prime, V.diag + (-m,)))


def vector_of_norm(V: QuadSpace, m: PAdic):
    """A vector x with Q(x) = m, built from a hyperbolic pair (V isotropic)."""
    v = isotropic_vector(V).vector
    w = hyperbolic_partner(V.gram(), v)
    return la.add(v, la.scale(m / 2, w))


def orthogonal_complement(V: QuadSpace, x) -> QuadSpace:
    q = V.Q(x)
    if q.is_zero():
        raise ValueError("vector is null to working precision; complement is degenerate")
    gram = V.gram()
    return restrict(gram, complement_basis(gram, [x], V.prime), V.prime)


def null_reduction(V: QuadSpace, r) -> QuadSpace:
    """r^perp / <r> with its induced form, realized as {r, w}^perp."""
    if not V.Q(r).is_zero():
        raise ValueError("reduction needs a null vector")
    return _split_plane(V, r)


# -- reporting ----------------------------------------------------------------


def parse_diag(p: int, text: str, prec: int = DEFAULT_PREC) -> QuadSpace:
    parts = [s for s in text.split(",") if s.strip()]
    coeffs = []
    for s in parts:
        c = Fraction(s.strip())
        if c == 0:
            raise DegenerateFormError("diagonal coefficient 0 makes the form degenerate")
        coeffs.append(c)
    return QuadSpace.from_rationals(p, coeffs, prec)


def invariants_json(inv: Invariants) -> dict:
    return {"dim": inv.dim, "disc_class": inv.disc.representative, "hasse": inv.hasse}


def classification_report(V: QuadSpace) -> dict:
    inv = invariants(V)
    wd = witt_decompose(V)
    out = invariants_json(inv)
    out["witt_index"] = wd.witt_index
    out["isotropic"] = is_isotropic(V)
    kern = invariants_json(invariants(wd.kernel))
    kern["diag"] = [a.to_json() for a in wd.kernel.diag]
    out["kernel"] = kern
    return out
