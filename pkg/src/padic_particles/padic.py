"""Capped relative precision arithmetic in Q_p.

A nonzero element is stored as ``p**val * unit`` where ``unit`` is known
modulo ``p**prec``.  Zero is a separate state: ``unit == 0`` and ``val`` holds
the absolute precision to which the element is known to vanish (``INF`` for
an exact zero).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PREC = 32
INF = math.inf


class PrecisionError(ArithmeticError):
    """Not enough digits are known to decide the requested question."""


class PrimeMismatchError(ValueError):
    pass


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def least_nonresidue(p: int) -> int:
    if p == 2:
        raise ValueError("no quadratic non-residue modulo 2")
    n = 2
    while legendre(n, p) != -1:
        n += 1
    return n


def _tonelli(a: int, p: int) -> int:
    # square root of a quadratic residue modulo an odd prime
    a %= p
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = least_nonresidue(p)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


class PAdic:
    """Element of Q_p with capped relative precision.

    Arithmetic follows the usual rules: products and quotients keep the
    smaller relative precision, sums keep the smaller absolute precision.
    ``==`` means equality to the precision both operands carry.
    """

    __slots__ = ("p", "val", "unit", "prec")

    def __init__(self, p: int, val, unit: int, prec: int):
        if unit == 0:
            self.p, self.val, self.unit, self.prec = p, val, 0, 0
            return
        if prec < 1:
            raise ValueError("relative precision must be >= 1")
        mod = p**prec
        unit %= mod
        if unit % p == 0:
            raise ValueError("unit part must be coprime to p")
        self.p, self.val, self.unit, self.prec = p, val, unit, prec

    # -- construction -------------------------------------------------
    @classmethod
    def from_rational(cls, p: int, num, den=1, prec: int = DEFAULT_PREC) -> PAdic:
        if prec < 1:
            raise ValueError("precision must be positive")
        x = Fraction(num, den)
        if x == 0:
            return cls.zero(p)
        vn = valuation(x.numerator, p)
        vd = valuation(x.denominator, p)
        un = x.numerator // p**vn
        ud = x.denominator // p**vd
        mod = p**prec
        return cls(p, vn - vd, un * pow(ud, -1, mod), prec)

    @classmethod
    def zero(cls, p: int, absprec=INF) -> PAdic:
        return cls(p, absprec, 0, 0)

    @classmethod
    def one(cls, p: int, prec: int = DEFAULT_PREC) -> PAdic:
        return cls(p, 0, 1, prec)

    # -- basic queries --------------------------------------------------
    def is_zero(self) -> bool:
        """True when the element is indistinguishable from zero."""
        return self.unit == 0

    def is_exact_zero(self) -> bool:
        return self.unit == 0 and self.val == INF

    @property
    def absprec(self):
        return self.val if self.unit == 0 else self.val + self.prec

    def to_fraction(self) -> Fraction:
        """The rational ``p**val * unit``, unit taken as the balanced residue."""
        if self.unit == 0:
            return Fraction(0)
        mod = self.p**self.prec
        u = self.unit if 2 * self.unit <= mod else self.unit - mod
        return Fraction(u) * Fraction(self.p) ** self.val

    def __repr__(self):
        if self.unit == 0:
            return f"PAdic(0 + O({self.p}^{self.val}))"
        return f"PAdic({self.p}^{self.val} * {self.unit} + O({self.p}^{self.absprec}))"

    def __str__(self):
        if self.unit == 0:
            return f"O({self.p}^{self.val})" if self.val != INF else "0"
        return str(self.to_fraction())

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> PAdic:
        if isinstance(other, PAdic):
            if other.p != self.p:
                raise PrimeMismatchError(f"prime mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            x = Fraction(other)
            if x == 0:
                return PAdic.zero(self.p)
            v = valuation(x.numerator, self.p) - valuation(x.denominator, self.p)
            if self.absprec == INF:
                prec = DEFAULT_PREC
            else:
                # enough digits to not be the precision bottleneck
                prec = max(1, self.prec, self.absprec - v)
            return PAdic.from_rational(self.p, x, 1, prec)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        if self.unit == 0:
            return self
        return PAdic(self.p, self.val, -self.unit, self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        absprec = min(self.absprec, other.absprec)
        if self.unit == 0 and other.unit == 0:
            return PAdic.zero(p, absprec)
        if self.unit == 0 or other.unit == 0:
            x = other if self.unit == 0 else self
            if x.val >= absprec:
                return PAdic.zero(p, absprec)
            return PAdic(p, x.val, x.unit, absprec - x.val)
        m = min(self.val, other.val)
        s = self.unit * p ** (self.val - m) + other.unit * p ** (other.val - m)
        mod = p ** (absprec - m)
        s %= mod
        if s == 0:
            return PAdic.zero(p, absprec)
        k = valuation(s, p)
        return PAdic(p, m + k, s // p**k, absprec - m - k)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.unit == 0 or other.unit == 0:
            if self.unit == 0 and other.unit == 0:
                return PAdic.zero(self.p, self.val + other.val)
            z, x = (self, other) if self.unit == 0 else (other, self)
            return PAdic.zero(self.p, z.val + x.val)
        prec = min(self.prec, other.prec)
        return PAdic(self.p, self.val + other.val, self.unit * other.unit, prec)

    __rmul__ = __mul__

    def inverse(self) -> PAdic:
        if self.unit == 0:
            if self.val == INF:
                raise ZeroDivisionError("division by exact zero")
            raise PrecisionError("division by an element indistinguishable from zero")
        mod = self.p**self.prec
        return PAdic(self.p, -self.val, pow(self.unit, -1, mod), self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return PAdic.one(self.p, max(self.prec, 1) if self.unit else DEFAULT_PREC)
        if self.unit == 0:
            return PAdic.zero(self.p, self.val * n)
        return PAdic(self.p, self.val * n, pow(self.unit, n, self.p**self.prec), self.prec)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except PrimeMismatchError:
            return False
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def lift_to_precision(self, prec: int) -> PAdic:
        """Pad with zero digits; only meaningful for elements known exactly."""
        if self.unit == 0:
            return self
        return PAdic(self.p, self.val, self.unit, max(prec, self.prec))

    def truncate(self, prec: int) -> PAdic:
        if self.unit == 0 or prec >= self.prec:
            return self
        return PAdic(self.p, self.val, self.unit, prec)

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        val = None if self.val == INF else self.val
        return {"p": self.p, "val": val, "unit": self.unit, "prec": self.prec}

    @classmethod
    def from_json(cls, d: dict) -> PAdic:
        val = INF if d["val"] is None else d["val"]
        return cls(d["p"], val, d["unit"], d["prec"])


def from_rational(prime: int, numerator, denominator=1, precision: int = DEFAULT_PREC) -> PAdic:
    if denominator == 0:
        raise ZeroDivisionError("zero denominator")
    if precision < 1:
        raise ValueError("precision must be positive")
    return PAdic.from_rational(prime, numerator, denominator, precision)


def parse_rational(p: int, text: str, prec: int = DEFAULT_PREC) -> PAdic:
    """Parse ``"num/den"`` (or an integer) into Q_p."""
    return PAdic.from_rational(p, Fraction(text.strip()), 1, prec)


def arith(a: PAdic, b: PAdic, kind: str) -> PAdic:
    if a.p != b.p:
        raise PrimeMismatchError(f"prime mismatch: {a.p} vs {b.p}")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown operation {kind!r}")


def _require_nonzero(a: PAdic, need: int):
    if a.unit == 0:
        if a.val == INF:
            raise ValueError("zero has no square class")
        raise PrecisionError("element indistinguishable from zero")
    if a.prec < need:
        raise PrecisionError(f"need {need} digits of relative precision, have {a.prec}")


def _needed_digits(p: int) -> int:
    return 3 if p == 2 else 1


def is_square(a: PAdic) -> bool:
    _require_nonzero(a, _needed_digits(a.p))
    if a.val % 2:
        return False
    if a.p == 2:
        return a.unit % 8 == 1
    return legendre(a.unit, a.p) == 1


def sqrt(a: PAdic) -> PAdic:
    """Square root by Hensel lifting.

    Of the two roots the one whose unit has the smaller lowest differing
    digit is returned (for odd p: unit mod p in the lower half).
    """
    if a.is_exact_zero():
        return a
    if not is_square(a):
        raise ValueError(f"{a} is not a square in Q_{a.p}")
    p, n, u = a.p, a.prec, a.unit
    if p == 2:
        # x^2 = u mod 2^k, adjust by 2^(k-1) to climb one digit
        x = 1
        for k in range(3, n):
            if (x * x - u) % (1 << (k + 1)):
                x += 1 << (k - 1)
        prec = max(n - 1, 1)
        mod = 1 << prec
        x %= mod
        if prec >= 2 and x % 4 == 3:
            x = -x % mod
        return PAdic(2, a.val // 2, x, prec)
    x = _tonelli(u, p)
    # Newton: the derivative 2x is a unit, so digits double each step
    k = 1
    while k < n:
        k = min(2 * k, n)
        mod = p**k
        x = (x - (x * x - u) * pow(2 * x, -1, mod)) % mod
    mod = p**n
    if x % p > (-x) % p:
        x = -x % mod
    return PAdic(p, a.val // 2, x, n)


@dataclass(frozen=True)
class SquareClass:
    """Coset of Q_p^x modulo squares, named by its canonical representative."""

    prime: int
    representative: int

    def __mul__(self, other: SquareClass) -> SquareClass:
        if self.prime != other.prime:
            raise PrimeMismatchError("prime mismatch")
        return square_class_of_rational(self.prime, self.representative * other.representative)

    def is_trivial(self) -> bool:
        return self.representative == 1

    def __str__(self):
        return str(self.representative)


def square_class_reps(p: int) -> list[int]:
    if p == 2:
        return [1, -1, 5, -5, 2, -2, 10, -10]
    u = least_nonresidue(p)
    return [1, u, p, u * p]


_TWO_ADIC_UNIT_CLASS = {1: 1, 3: -5, 5: 5, 7: -1}


def _class_rep(p: int, v: int, unit: int) -> int:
    if p == 2:
        return _TWO_ADIC_UNIT_CLASS[unit % 8] * (2 if v % 2 else 1)
    base = 1 if legendre(unit, p) == 1 else least_nonresidue(p)
    return base * (p if v % 2 else 1)


def square_class_of(a: PAdic) -> SquareClass:
    _require_nonzero(a, _needed_digits(a.p))
    return SquareClass(a.p, _class_rep(a.p, a.val, a.unit))


def square_class_of_rational(p: int, x) -> SquareClass:
    x = Fraction(x)
    if x == 0:
        raise ValueError("zero has no square class")
    return square_class_of(PAdic.from_rational(p, x, 1, 8))


def hilbert_symbol(a: PAdic, b: PAdic) -> int:
    """(a, b)_p via the closed-form unit/valuation formulas."""
    if a.p != b.p:
        raise PrimeMismatchError("prime mismatch")
    p = a.p
    _require_nonzero(a, _needed_digits(p))
    _require_nonzero(b, _needed_digits(p))
    alpha, beta, u, v = a.val, b.val, a.unit, b.unit
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        u, v = u % 8, v % 8
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    e = (alpha * beta * ((p - 1) // 2)) % 2
    sign = -1 if e else 1
    if beta % 2:
        sign *= legendre(u, p)
    if alpha % 2:
        sign *= legendre(v, p)
    return sign


@dataclass(frozen=True)
class PhaseQZ:
    """Element of Q/Z with p-power denominator, kept in [0, 1)."""

    prime: int
    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        object.__setattr__(self, "value", v - math.floor(v))

    def __add__(self, other: PhaseQZ) -> PhaseQZ:
        return PhaseQZ(self.prime, self.value + other.value)

    def __neg__(self) -> PhaseQZ:
        return PhaseQZ(self.prime, -self.value)

    def __sub__(self, other: PhaseQZ) -> PhaseQZ:
        return PhaseQZ(self.prime, self.value - other.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self):
        return str(self.value)


def additive_character(x: PAdic) -> PhaseQZ:
    """psi(x): the p-adic fractional part of x, as an exact element of Q/Z."""
    p = x.p
    if x.unit == 0:
        if x.val < 0:
            raise PrecisionError("fractional digits of a zero-to-precision element unknown")
        return PhaseQZ(p, Fraction(0))
    if x.val >= 0:
        return PhaseQZ(p, Fraction(0))
    if x.absprec < 0:
        raise PrecisionError(f"absolute precision {x.absprec} does not reach the units digit")
    k = -x.val
    return PhaseQZ(p, Fraction(x.unit % p**k, p**k))
