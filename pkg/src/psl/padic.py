"""Finite-precision arithmetic in finite extensions of Q_p.

A field is presented as a tower: the unramified ring O_0 = Z_p[y]/(g(y)) of
degree f (g from :mod:`psl.residue`), then an Eisenstein polynomial E(x) of
degree e with rational-integer coefficients. An element of O_K is stored as
the ``e*f`` integer coefficients of ``pi^i * y^j`` (index ``i*f + j``) together
with an absolute pi-adic precision. Coefficients are kept canonically
truncated: digits known only beyond the precision are zeroed, so two elements
with equal coefficients and precision are equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence, Union

from .errors import (
    DivisionByPrecisionZero,
    EvenPrime,
    FieldMismatch,
    NotEisenstein,
    PrecisionInsufficient,
    PrecisionLoss,
    PrecisionTooLow,
    ZeroValuation,
)
from .residue import Elem, ResidueField


def _vp(n: int, p: int) -> int:
    if n == 0:
        return math.inf  # type: ignore[return-value]
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class PadicField:
    """A finite extension of Q_p: unramified of degree ``f``, then Eisenstein.

    ``eisenstein`` holds integer coefficients, constant term first, leading
    coefficient 1. ``precision`` is the absolute precision in powers of the
    uniformizer; the default is ``3*p*e0 + 8`` rounded up.
    """

    p: int
    f: int = 1
    eisenstein: tuple[int, ...] | None = None  # default X - p
    precision: int | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        p = self.p
        if p == 2:
            raise EvenPrime("p = 2 is excluded")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if self.f < 1:
            raise ValueError("residue degree must be positive")
        eis = tuple(int(c) for c in self.eisenstein) if self.eisenstein is not None else (-p, 1)
        object.__setattr__(self, "eisenstein", eis)
        if len(eis) < 2 or eis[-1] != 1:
            raise NotEisenstein(f"{eis}: need a monic polynomial of degree >= 1")
        if any(c % p for c in eis[:-1]) or eis[0] % (p * p) == 0:
            raise NotEisenstein(f"{eis} is not Eisenstein at {p}")
        default = math.ceil(3 * p * self.e0) + 8
        if self.precision is None:
            object.__setattr__(self, "precision", default)
        if self.precision < math.ceil(p * self.e0) + 2:
            raise PrecisionTooLow(
                f"precision {self.precision} < p*e0 + 2 = {math.ceil(p * self.e0) + 2}"
            )

    # -- invariants -------------------------------------------------------
    @property
    def e(self) -> int:
        return len(self.eisenstein) - 1

    @property
    def degree(self) -> int:
        return self.e * self.f

    @property
    def e0(self) -> Fraction:
        return Fraction(self.e, self.p - 1)

    @property
    def has_integral_e0(self) -> bool:
        return self.e0.denominator == 1

    @property
    def pe0(self) -> int:
        """p*e0 as an int; only meaningful when e0 is integral."""
        return int(self.p * self.e0)

    @property
    def N(self) -> int:
        return self.precision  # type: ignore[return-value]

    @property
    def shape(self) -> tuple:
        return (self.p, self.f, self.eisenstein)

    @cached_property
    def residue(self) -> ResidueField:
        return ResidueField(self.p, self.f)

    @cached_property
    def M(self) -> int:
        """Number of p-adic digits stored per coefficient."""
        return -(-self.N // self.e)

    @cached_property
    def modulus(self) -> int:
        return self.p**self.M

    @cached_property
    def _g(self) -> tuple[int, ...]:
        return self.residue.modulus

    def _digit_moduli(self, prec: int) -> tuple[int, ...]:
        return _digit_moduli(self.p, self.e, prec)

    def __repr__(self):
        label = self.name or f"K(p={self.p}, f={self.f}, E={list(self.eisenstein)})"
        return f"{label}[N={self.N}]"

    def with_precision(self, precision: int) -> "PadicField":
        return PadicField(self.p, self.f, self.eisenstein, precision, self.name)

    def to_json(self) -> dict:
        return {"p": self.p, "f": self.f, "eisenstein": list(self.eisenstein), "precision": self.N}

    @classmethod
    def from_json(cls, doc: dict, name: str = "") -> "PadicField":
        return cls(int(doc["p"]), int(doc.get("f", 1)), tuple(doc["eisenstein"]),
                   doc.get("precision"), name or doc.get("name", ""))

    # -- element constructors ---------------------------------------------
    def element(self, coeffs: Sequence[int], prec: int | None = None) -> "PadicElement":
        """Element from raw coefficients indexed ``i*f + j`` (pi^i y^j)."""
        c = list(coeffs) + [0] * (self.e * self.f - len(coeffs))
        return PadicElement(self, c, self.N if prec is None else prec)

    def __call__(self, x) -> "PadicElement":
        if isinstance(x, PadicElement):
            if x.field.shape != self.shape:
                raise FieldMismatch(f"{x.field} vs {self}")
            return PadicElement(self, x.c, min(x.prec, self.N))
        if isinstance(x, int):
            return self.element([x])
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ValueError("only p-integral rationals embed into O_K")
            return self.element([x.numerator]) * self.element([x.denominator]).inverse()
        if isinstance(x, (list, tuple)):
            return self.from_pi_expansion(x)
        raise TypeError(f"cannot coerce {x!r}")

    def from_pi_expansion(self, coeffs: Sequence) -> "PadicElement":
        """sum c_i pi^i, where each c_i is an int or a tuple over the y-basis."""
        acc = self.zero
        for c in reversed(list(coeffs)):
            if isinstance(c, (tuple, list)):
                term = self.element(list(c) + [0] * (self.f - len(c)))
            else:
                term = self.element([int(c)])
            acc = acc * self.pi + term
        return acc

    @cached_property
    def zero(self) -> "PadicElement":
        return self.element([])

    @cached_property
    def one(self) -> "PadicElement":
        return self.element([1])

    @cached_property
    def pi(self) -> "PadicElement":
        if self.e == 1:
            # pi = -E_0 is a rational integer of valuation 1
            return self.element([-self.eisenstein[0]])
        return self.element([0] * self.f + [1])

    @cached_property
    def y(self) -> "PadicElement":
        """Generator of the unramified stage."""
        if self.f == 1:
            return self.element([(-self._g[0])])
        return self.element([0, 1])

    @cached_property
    def epsilon(self) -> "PadicElement":
        """The unit pi^e / p."""
        # pi^e = -sum_{t<e} E_t pi^t and every E_t is divisible by p
        return self.element(
            [(-(c // self.p)) if j == 0 else 0 for c in self.eisenstein[:-1] for j in range(self.f)]
        )

    @cached_property
    def epsilon_inv(self) -> "PadicElement":
        return self.epsilon.inverse()

    def lift(self, r: Elem) -> "PadicElement":
        """The naive integer lift of a residue-field element."""
        return self.element(list(r))

    def teichmuller(self, r: Elem) -> "PadicElement":
        """Teichmuller representative of a nonzero residue element."""
        if not any(r):
            raise ZeroValuation("Teichmuller lift of 0")
        return _teichmuller(self, tuple(r))

    # -- quantities used throughout ---------------------------------------
    def residue_of_p_over_pi_e(self) -> Elem:
        """The class a of p * pi^(-v(p)) in the residue field."""
        return self.epsilon_inv.residue()


@lru_cache(maxsize=None)
def _digit_moduli(p: int, e: int, prec: int) -> tuple[int, ...]:
    return tuple(p ** max(0, -(-(prec - i) // e)) for i in range(e))


@lru_cache(maxsize=4096)
def _teichmuller(K: PadicField, r: tuple[int, ...]) -> "PadicElement":
    x = K.lift(r)
    q = K.residue.q
    for _ in range(K.M + 1):
        x = x**q
    return x


Scalar = Union["PadicElement", int]


class PadicElement:
    """An element of O_K known modulo pi^prec."""

    __slots__ = ("field", "c", "prec", "_val")

    def __init__(self, field: PadicField, coeffs: Sequence[int], prec: int):
        prec = min(prec, field.N)
        self.field = field
        self.prec = prec
        mods = field._digit_moduli(max(prec, 0))
        f = field.f
        self.c = tuple(coeffs[k] % mods[k // f] for k in range(len(coeffs)))
        self._val = None

    def _from_list(self, coeffs, prec=None):
        return PadicElement(self.field, coeffs, self.field.N if prec is None else prec)

    # -- inspection -------------------------------------------------------
    def _raw_valuation(self) -> int:
        if self._val is None:
            K = self.field
            e, f, p = K.e, K.f, K.p
            best = self.prec
            for k, ck in enumerate(self.c):
                if ck:
                    i = k // f
                    v = e * _vp(ck, p) + i
                    if v < best:
                        best = v
            self._val = best
        return self._val

    def is_zero(self) -> bool:
        return self._raw_valuation() >= self.prec

    def valuation(self) -> int:
        v = self._raw_valuation()
        if v >= self.prec:
            raise ZeroValuation(f"element is zero at precision {self.prec}")
        return v

    def is_unit(self) -> bool:
        return not self.is_zero() and self._raw_valuation() == 0

    def residue(self) -> Elem:
        f, p = self.field.f, self.field.p
        return tuple(x % p for x in self.c[:f])

    def __repr__(self):
        K = self.field
        terms = []
        for i in range(K.e):
            block = self.c[i * K.f:(i + 1) * K.f]
            if any(block):
                b = block[0] if K.f == 1 else block
                terms.append(f"{b}*pi^{i}" if i else f"{b}")
        return f"({' + '.join(terms) or '0'} + O(pi^{self.prec}))"

    def pi_adic_digits(self, count: int | None = None) -> list[Elem]:
        """Digits d_i (residue tuples of Teichmuller-free naive lifts) with x = sum d_i pi^i."""
        K = self.field
        count = self.prec if count is None else min(count, self.prec)
        out = []
        x = self
        for _ in range(count):
            d = x.residue()
            out.append(d)
            x = (x - K.lift(d))
            if x.is_zero():
                out.extend([K.residue.zero] * (count - len(out)))
                break
            x = x.shift(-1)
        return out

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "PadicElement":
        if isinstance(other, PadicElement):
            if other.field.shape != self.field.shape:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return self.field.element([other])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._from_list([a + b for a, b in zip(self.c, o.c)], min(self.prec, o.prec))

    __radd__ = __add__

    def __neg__(self):
        return self._from_list([-a for a in self.c], self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._from_list([a - b for a, b in zip(self.c, o.c)], min(self.prec, o.prec))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        K = self.field
        va, vb = self._raw_valuation(), o._raw_valuation()
        prec = min(self.prec + vb, o.prec + va, K.N)
        return self._from_list(_mul_raw(K, self.c, o.c), prec)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "PadicElement":
        """Inverse of a unit of O_K."""
        if self.is_zero():
            raise DivisionByPrecisionZero("inverse of an element that is zero at precision")
        if self._raw_valuation() != 0:
            from .errors import NotAUnit
            raise NotAUnit("inverse of a non-unit leaves O_K; divide with shift() instead")
        K = self.field
        x = K.lift(K.residue.inv(self.residue()))
        good = 1
        while good < self.prec:
            x = x * (2 - self * x)
            good *= 2
        return PadicElement(K, x.c, self.prec)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        v = o.valuation()
        if v == 0:
            return self * o.inverse()
        return self.shift(-v) * o.shift(-v).inverse()

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, PadicElement) or other.field.shape == self.field.shape else None
        if o is None or o is NotImplemented:
            return False
        return (self - o).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def shift(self, k: int) -> "PadicElement":
        """Multiply by pi^k; for k < 0 the division must be exact."""
        K = self.field
        if k == 0:
            return self
        if k > 0:
            return self * K.pi**k
        k = -k
        if self._raw_valuation() < k:
            if self.is_zero():
                raise PrecisionLoss("cannot divide: element is zero at precision")
            raise ValueError(f"valuation {self._raw_valuation()} < {k}: not divisible by pi^{k}")
        q, r = divmod(k, K.e)
        if r:
            q += 1
            r = K.e - r
        # self / pi^k = self * pi^r / (p^q * eps^q)
        x = self * K.pi**r if r else self
        if q:
            x = x * K.epsilon_inv**q
            pq = K.p**q
            if any(c % pq for c in x.c):
                raise PrecisionLoss("inexact division by p")
            # x was capped at N when multiplied by pi^r
            return PadicElement(K, [c // pq for c in x.c], min(self.prec + r, K.N) - q * K.e)
        return PadicElement(K, x.c, self.prec - k)

    def unit_part(self) -> tuple[int, "PadicElement"]:
        v = self.valuation()
        return v, self.shift(-v)


def _mul_raw(K: PadicField, a: Sequence[int], b: Sequence[int]) -> list[int]:
    e, f = K.e, K.f
    eis = K.eisenstein
    if f == 1:
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        for k in range(2 * e - 2, e - 1, -1):
            ck = prod[k]
            if ck:
                for t in range(e):
                    if eis[t]:
                        prod[k - e + t] -= eis[t] * ck
        m = K.modulus
        return [x % m for x in prod[:e]]
    g = K._g
    rows = [[0] * (2 * f - 1) for _ in range(2 * e - 1)]
    for i in range(e):
        ai = a[i * f:(i + 1) * f]
        if not any(ai):
            continue
        for k in range(e):
            bk = b[k * f:(k + 1) * f]
            if not any(bk):
                continue
            row = rows[i + k]
            for j1, x in enumerate(ai):
                if x:
                    for j2, y in enumerate(bk):
                        if y:
                            row[j1 + j2] += x * y
    for row in rows:
        for d in range(2 * f - 2, f - 1, -1):
            cd = row[d]
            if cd:
                for t in range(f):
                    if g[t]:
                        row[d - f + t] -= g[t] * cd
                row[d] = 0
    for k in range(2 * e - 2, e - 1, -1):
        rk = rows[k]
        if any(rk[:f]):
            for t in range(e):
                if eis[t]:
                    tgt = rows[k - e + t]
                    for j in range(f):
                        tgt[j] -= eis[t] * rk[j]
    m = K.modulus
    return [rows[i][j] % m for i in range(e) for j in range(f)]


# -- polynomials over O_K ------------------------------------------------------
Poly = list  # list of PadicElement, constant term first


def as_poly(K: PadicField, coeffs: Iterable) -> Poly:
    return [K(c) if not isinstance(c, PadicElement) else c for c in coeffs]


def poly_eval(P: Poly, x: PadicElement) -> PadicElement:
    acc = x.field.zero
    for c in reversed(P):
        acc = acc * x + c
    return acc


def poly_derivative(P: Poly) -> Poly:
    return [P[k] * k for k in range(1, len(P))]


def poly_mul(A: Poly, B: Poly) -> Poly:
    K = (A[0] if A else B[0]).field
    out = [K.zero] * (len(A) + len(B) - 1)
    for i, a in enumerate(A):
        if a.is_zero():
            continue
        for j, b in enumerate(B):
            out[i + j] = out[i + j] + a * b
    return out


def poly_rem_monic(A: Poly, Q: Poly) -> Poly:
    """A mod Q for monic Q."""
    n = len(Q) - 1
    A = list(A)
    for k in range(len(A) - 1, n - 1, -1):
        c = A[k]
        if not c.is_zero():
            for t in range(n):
                A[k - n + t] = A[k - n + t] - c * Q[t]
        A.pop()
    K = Q[0].field
    return A + [K.zero] * (n - len(A))


def taylor_shift(P: Poly, r: PadicElement) -> Poly:
    """Coefficients of P(r + Y)."""
    P = list(P)
    n = len(P)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            P[k] = P[k] + r * P[k + 1]
    return P


def hensel_roots(poly: Sequence, K: PadicField) -> list[PadicElement]:
    """All roots in O_K of a polynomial with O_K coefficients.

    Digit-by-digit search: reduce to the residue field, lift simple residue
    roots with Newton's method and recurse through multiple ones. Roots are
    returned ordered by (valuation, coefficients).
    """
    P = as_poly(K, poly)
    while P and P[-1].is_zero():
        P.pop()
    if not P:
        raise ValueError("zero polynomial")
    roots: list[PadicElement] = []
    _roots_rec(P, K, K.zero, 0, roots, depth=0)
    uniq: list[PadicElement] = []
    for r in roots:
        if not any((r - s).is_zero() for s in uniq):
            uniq.append(r)
    uniq.sort(key=lambda r: (r._raw_valuation(), r.c))
    return uniq


def _roots_rec(P: Poly, K: PadicField, offset: PadicElement, level: int, out: list, depth: int):
    # roots of P are t with offset + pi^level * t a root of the original
    if depth > K.N:
        raise PrecisionInsufficient("root search did not separate roots")
    nonzero = [c for c in P if not c.is_zero()]
    if not nonzero:
        # every residue works: the remaining digits are unknown at this precision
        out.append(offset)
        return
    if len(nonzero) == 1 and not P[0].is_zero():
        return
    v = min(c._raw_valuation() for c in nonzero)
    if v:
        P = [c.shift(-v) if not c.is_zero() else K.zero for c in P]
        if any(c.prec <= 0 for c in P if not c.is_zero()):
            raise PrecisionInsufficient("precision exhausted during root search")
    if P[0].is_zero() and P[0].prec <= 0:
        raise PrecisionInsufficient("precision exhausted during root search")
    F = K.residue
    red = [c.residue() for c in P]
    dred = [F.scale(k, red[k]) for k in range(1, len(red))]
    for r in F.elements():
        if not F.is_zero(_res_eval(F, red, r)):
            continue
        if not F.is_zero(_res_eval(F, dred, r)):
            root = _newton(P, K.lift(r))
            out.append(offset + root * K.pi**level if level else offset + root)
            continue
        S = taylor_shift(P, K.lift(r))
        S = [S[k] * K.pi**k for k in range(len(S))]
        new_offset = offset + K.lift(r) * K.pi**level
        _roots_rec(S, K, new_offset, level + 1, out, depth + 1)


def _res_eval(F, coeffs, r):
    acc = F.zero
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, r), c)
    return acc


def _newton(P: Poly, x: PadicElement) -> PadicElement:
    dP = poly_derivative(P)
    prec = min(c.prec for c in P if not c.is_zero())
    good = 1
    while good < prec + 1:
        x = x - poly_eval(P, x) * poly_eval(dP, x).inverse()
        good *= 2
    return x


def det(matrix: Sequence[Sequence[PadicElement]]) -> PadicElement:
    """Division-free determinant (Laplace expansion with memoised minors)."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    memo: dict[tuple[int, int], PadicElement] = {}

    def minor(row: int, cols: int) -> PadicElement:
        if row == n:
            return matrix[0][0].field.one
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = None
        sign = 1
        for c in range(n):
            if cols >> c & 1:
                entry = matrix[row][c]
                if not entry.is_zero():
                    term = entry * minor(row + 1, cols & ~(1 << c))
                    acc = (term if sign > 0 else -term) if acc is None else (acc + term if sign > 0 else acc - term)
                sign = -sign
        if acc is None:
            acc = matrix[0][0].field.zero
        memo[key] = acc
        return acc

    return minor(0, (1 << n) - 1)


def cyclotomic_shifted(p: int) -> list[int]:
    """Coefficients of Phi_{p^k}(1 + X) for k = 1, constant first."""
    return [math.comb(p, k + 1) for k in range(p)]


def cyclotomic_eisenstein(p: int, k: int = 1) -> tuple[int, ...]:
    """Phi_{p^k}(1 + X), an Eisenstein polynomial of degree (p-1) p^(k-1)."""
    # Phi_{p^k}(x) = sum_{i<p} x^(i p^(k-1))
    deg = (p - 1) * p ** (k - 1)
    coeffs = [0] * (deg + 1)
    step = p ** (k - 1)
    for i in range(p):
        n = i * step
        for j in range(n + 1):
            coeffs[j] += math.comb(n, j)
    return tuple(coeffs)
