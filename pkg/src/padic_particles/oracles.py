"""Brute-force reference deciders, written without the closed-form theory.

These work on plain rationals and integers, enumerate residues modulo
small powers of p, and accept a residue only when Hensel's lemma
(``v(f(x)) > 2 v(f'(x))``) guarantees a true p-adic solution nearby.
They are slow and exist to cross-check the fast paths.
"""

from __future__ import annotations

from fractions import Fraction

_CAP = 60  # digits kept when reducing rational units to integers


def _v(n: int, p: int) -> int:
    if n == 0:
        return _CAP
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def split(p: int, x) -> tuple[int, int]:
    """x = p**e * u with u an integer unit mod p**_CAP."""
    x = Fraction(x)
    e = _v(x.numerator, p) - _v(x.denominator, p)
    num = x.numerator // p ** _v(x.numerator, p)
    den = x.denominator // p ** _v(x.denominator, p)
    mod = p**_CAP
    return e, num * pow(den, -1, mod) % mod


def is_square(p: int, x) -> bool:
    e, u = split(p, x)
    if e % 2:
        return False
    k = 5 if p == 2 else 3
    mod = p**k
    for y in range(1, mod, 2 if p == 2 else 1):
        if y % p == 0:
            continue
        r = (y * y - u) % p**_CAP
        # f(y) = y^2 - u, f'(y) = 2y
        if _v(r, p) > 2 * _v(2 * y, p):
            return True
    return False


def square_classes(p: int) -> list[int]:
    if p == 2:
        return [1, -1, 5, -5, 2, -2, 10, -10]
    squares = {y * y % p for y in range(1, p)}
    u = next(n for n in range(2, p) if n not in squares)
    return [1, u, p, u * p]


def square_class(p: int, x) -> int:
    for r in square_classes(p):
        if is_square(p, Fraction(x) / r):
            return r
    raise AssertionError("no class found")


def _normalized(p: int, coeffs):
    out = []
    for c in coeffs:
        e, u = split(p, c)
        out.append(u * p ** (e % 2))
    return out


def is_isotropic(p: int, coeffs) -> bool:
    """Search for a primitive zero of sum c_i x_i^2, lifting digit by digit."""
    cs = _normalized(p, coeffs)
    if len(cs) < 2:
        return False
    if sum(1 for c in cs if c % p == 0) * 2 > len(cs):
        # rescaling the form by p swaps the unit and p-divisible parts
        cs = _normalized(p, [Fraction(c) * p for c in cs])
    n = len(cs)
    depth = 5 if p == 2 else 3
    two = _v(2, p) if p == 2 else 0

    def q(x):
        return sum(c * a * a for c, a in zip(cs, x))

    def certified(x):
        vq = _v(q(x) % p**_CAP, p)
        for c, a in zip(cs, x):
            if a % p == 0:
                continue
            if vq > 2 * (two + _v(c, p)):
                return True
        return False

    for lead in range(n):
        stack = []
        for t in range(p ** (n - lead - 1)):
            x = [0] * lead + [1]
            for _ in range(n - lead - 1):
                x.append(t % p)
                t //= p
            if q(x) % p == 0:
                stack.append((x, 1))
        while stack:
            x, k = stack.pop()
            if certified(x):
                return True
            if k == depth:
                continue
            step = p**k
            others = [j for j in range(n) if j != lead]
            for t in range(p ** len(others)):
                y = list(x)
                for j in others:
                    y[j] += (t % p) * step
                    t //= p
                if q(y) % p ** (k + 1) == 0:
                    stack.append((y, k + 1))
    return False


def hilbert_symbol(p: int, a, b) -> int:
    """+1 iff z^2 = a x^2 + b y^2 has a nontrivial solution."""
    return 1 if is_isotropic(p, [a, b, -1]) else -1
