"""Finite fields F_q, q = p^f, as F_p[y]/(g(y)).

Elements are tuples of f ints in [0, p), constant term first. The defining
polynomial g is the lexicographically least monic irreducible polynomial of
degree f, comparing coefficient tuples constant term first; the same integer
polynomial defines the unramified stage of every p-adic field, so residue
coordinates and reports are reproducible.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

Elem = tuple[int, ...]


def _poly_mulmod(a, b, g, p):
    f = len(g) - 1
    prod = [0] * (2 * f - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for d in range(len(prod) - 1, f - 1, -1):
        c = prod[d] % p
        if c:
            for t in range(f):
                prod[d - f + t] -= c * g[t]
        prod[d] = 0
    return tuple(x % p for x in prod[:f])


def _is_irreducible(g: tuple[int, ...], p: int) -> bool:
    """True if g (monic, deg f) is irreducible over F_p (Rabin's test)."""
    f = len(g) - 1
    if f == 1:
        return True
    # x^(p^f) == x mod g, and gcd(x^(p^(f/r)) - x, g) == 1 for prime r | f
    def xpow(k):
        result = tuple([1] + [0] * (f - 1))
        base = tuple([0, 1] + [0] * (f - 2))
        while k:
            if k & 1:
                result = _poly_mulmod(result, base, g, p)
            base = _poly_mulmod(base, base, g, p)
            k >>= 1
        return result

    x = tuple([0, 1] + [0] * (f - 2))
    if xpow(p**f) != x:
        return False
    for r in _prime_factors(f):
        h = list(xpow(p ** (f // r)))
        h[1] = (h[1] - 1) % p
        if _poly_gcd_degree(h, list(g), p) > 0:
            return False
    return True


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_gcd_degree(a, b, p):
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            c = (a[-1] * inv) % p
            shift = len(a) - len(b)
            for i, y in enumerate(b):
                a[shift + i] = (a[shift + i] - c * y) % p
            _trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1 if a else -1


@lru_cache(maxsize=None)
def conway_like_polynomial(p: int, f: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree f over F_p.

    Returned constant term first, including the leading 1.
    """
    for tail in itertools.product(range(p), repeat=f):
        g = tuple(tail) + (1,)
        if f > 1 and tail[0] == 0:
            continue
        if _is_irreducible(g, p):
            return g
    raise AssertionError("no irreducible polynomial found")


class ResidueField:
    """The finite field F_{p^f}."""

    def __init__(self, p: int, f: int):
        self.p = p
        self.f = f
        self.q = p**f
        self.modulus = conway_like_polynomial(p, f)

    def __repr__(self):
        return f"F_{self.q}"

    def __eq__(self, other):
        return isinstance(other, ResidueField) and (self.p, self.f) == (other.p, other.f)

    def __hash__(self):
        return hash((self.p, self.f))

    @property
    def zero(self) -> Elem:
        return (0,) * self.f

    @property
    def one(self) -> Elem:
        return (1,) + (0,) * (self.f - 1)

    def gen(self) -> Elem:
        if self.f == 1:
            return ((-self.modulus[0]) % self.p,)
        return (0, 1) + (0,) * (self.f - 2)

    def elements(self):
        """All elements, in a fixed order (zero first)."""
        for t in itertools.product(range(self.p), repeat=self.f):
            yield tuple(reversed(t))

    def from_int(self, n: int) -> Elem:
        return ((n % self.p),) + (0,) * (self.f - 1)

    def add(self, a: Elem, b: Elem) -> Elem:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a: Elem, b: Elem) -> Elem:
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a: Elem) -> Elem:
        return tuple((-x) % self.p for x in a)

    def scale(self, c: int, a: Elem) -> Elem:
        return tuple((c * x) % self.p for x in a)

    def mul(self, a: Elem, b: Elem) -> Elem:
        if self.f == 1:
            return ((a[0] * b[0]) % self.p,)
        return _poly_mulmod(a, b, self.modulus, self.p)

    def pow(self, a: Elem, k: int) -> Elem:
        if k < 0:
            a, k = self.inv(a), -k
        result = self.one
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def inv(self, a: Elem) -> Elem:
        if not any(a):
            raise ZeroDivisionError("inverse of 0 in residue field")
        return self.pow(a, self.q - 2)

    def is_zero(self, a: Elem) -> bool:
        return not any(a)

    def frobenius(self, a: Elem) -> Elem:
        return self.pow(a, self.p)

    def pth_root(self, a: Elem) -> Elem:
        return self.pow(a, self.q // self.p)

    def trace(self, a: Elem) -> int:
        """Absolute trace to F_p."""
        total, x = self.zero, a
        for _ in range(self.f):
            total = self.add(total, x)
            x = self.frobenius(x)
        assert all(c == 0 for c in total[1:])
        return total[0]

    def is_square(self, a: Elem) -> bool:
        if not any(a):
            return True
        return self.pow(a, (self.q - 1) // 2) == self.one

    def linear_map_matrix(self, fn) -> list[list[int]]:
        """Matrix (rows = output coordinates) of an F_p-linear map F_q -> F_q."""
        cols = []
        for j in range(self.f):
            basis = tuple(1 if i == j else 0 for i in range(self.f))
            cols.append(fn(basis))
        return [[cols[j][i] for j in range(self.f)] for i in range(self.f)]
