"""Extensions of a p-adic field: degree-p Kummer quotients and tower edges.

:class:`KummerExtension` presents ``L = K(b^(1/p))`` as ``K[Z]/(Q(Z))`` for a
monic ``Q`` over O_K chosen from the class of ``b``:

* ``b`` with a uniformizer component: ``Z = beta``, ``Q = Z^p - b``
  (Eisenstein, totally ramified);
* ``b`` a unit of level ``i < p*e0``, ``p`` not dividing ``i``:
  ``Z = beta - 1``, ``Q = (1 + Z)^p - b`` (totally ramified, ``O_K[Z]`` is a
  suborder of finite index);
* ``b`` a unit of level ``p*e0``: ``Z = (beta - 1)/pi^e0``,
  ``Q = ((1 + pi^e0 Z)^p - b)/pi^(p e0)`` (unramified, ``O_L = O_K[Z]``).

Norms are determinants of multiplication matrices, so they are exact in
O_K. Multiplying an element of L by a scalar of K changes its norm by a p-th
power, which is why norm *classes* may be computed on integral rescalings.

:class:`TowerEdge` covers the two extension shapes that are again fields in
tower form: the unramified extension of degree d and ``K(pi^(1/d))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .errors import EdgeMismatch, NoPthRoots, PrecisionLoss, RootOfZero
from .filtration import (
    FULL,
    HAS_UNIFORMIZER,
    TRIVIAL,
    basis_data,
    basis_product,
    class_vector,
    working_field,
)
from .padic import PadicElement, PadicField, det, hensel_roots, poly_rem_monic

UNRAMIFIED = "unramified"
TOTALLY_RAMIFIED = "totally ramified"
TRIVIAL_EXT = "trivial"


def _normalize_line(coords: tuple[int, ...], p: int) -> tuple[tuple[int, ...], int]:
    """(normalized coords, r) with coords == r * normalized and leading entry 1."""
    lead = next(c for c in coords if c % p)
    inv = pow(lead, -1, p)
    return tuple((c * inv) % p for c in coords), lead % p


@dataclass(frozen=True)
class Candidate:
    """An integral element of L (coefficients in Z) tagged with its L-level."""

    poly: tuple[PadicElement, ...]
    level: int | str
    label: str


class KummerExtension:
    """L = K(b^(1/p)) presented as K[Z]/(Q(Z)).

    Attributes follow the extension-handle contract: ``classification``,
    ``degree``, ``defining_polynomial`` (``Q``), ``uniformizer`` as a pair
    (integral polynomial in Z, power of pi dividing it) and
    ``different_exponent`` = v_L of the different of L/K.
    """

    def __init__(self, K: PadicField, coords: tuple[int, ...]):
        W = working_field(K)
        self.base = W
        p = W.p
        self.p = p
        data = basis_data(W)
        pe0, e0 = W.pe0, int(W.e0)
        self.canonical_coords = coords
        self.degree = p
        self.radicand = basis_product(W, coords)
        levels = data.levels
        lead_idx = next(i for i, c in enumerate(coords) if c % p)
        self.level = levels[lead_idx]
        b = self.radicand
        one, zero = W.one, W.zero
        if self.level == HAS_UNIFORMIZER:
            self.classification = TOTALLY_RAMIFIED
            self.Q = [-b] + [zero] * (p - 1) + [one]
            self.beta = [zero, one] + [zero] * (p - 2)
            self.uniformizer = ([zero, one] + [zero] * (p - 2), 0)
            self.different_exponent = (p - 1) * (pe0 + 1)
        elif self.level < pe0:
            i = self.level
            self.classification = TOTALLY_RAMIFIED
            self.Q = [one - b] + [W(math.comb(p, k)) for k in range(1, p)] + [one]
            self.beta = [one, one] + [zero] * (p - 2)
            k1 = pow(i, -1, p)
            poly = [zero] * p
            poly = _ypow(self, k1)
            self.uniformizer = (poly, (k1 * i) // p)
            self.different_exponent = (p - 1) * (pe0 - i + 1)
        else:
            self.classification = UNRAMIFIED
            pie0 = W.pi**e0
            Q = [(one - b).shift(-pe0)]
            for k in range(1, p):
                Q.append((W(math.comb(p, k)) * pie0**k).shift(-pe0))
            Q.append(one)
            self.Q = Q
            self.beta = [one, pie0] + [zero] * (p - 2)
            self.uniformizer = ([W.pi] + [zero] * (p - 1), 0)
            self.different_exponent = 0
        self.degree = p

    # -- arithmetic in L ----------------------------------------------------
    @property
    def defining_polynomial(self) -> list[PadicElement]:
        return list(self.Q)

    def element(self, coeffs) -> list[PadicElement]:
        W = self.base
        out = [W(c) for c in coeffs]
        return out + [W.zero] * (self.degree - len(out))

    def restrict(self, a: PadicElement) -> list[PadicElement]:
        """Res_{L/K}: a as a constant polynomial."""
        return self.element([a])

    def mul(self, A, B) -> list[PadicElement]:
        prod = [self.base.zero] * (len(A) + len(B) - 1)
        for i, a in enumerate(A):
            if a.is_zero():
                continue
            for j, b in enumerate(B):
                if not b.is_zero():
                    prod[i + j] = prod[i + j] + a * b
        return poly_rem_monic(prod, self.Q)

    def pow(self, A, k: int) -> list[PadicElement]:
        result = self.element([1])
        while k:
            if k & 1:
                result = self.mul(result, A)
            A = self.mul(A, A)
            k >>= 1
        return result

    def norm(self, A) -> PadicElement:
        """N_{L/K}(A) as the determinant of multiplication by A."""
        n = self.degree
        cols = []
        col = self.element(A)
        for k in range(n):
            cols.append(col)
            if k + 1 < n:
                col = poly_rem_monic([self.base.zero] + col, self.Q)
        matrix = [[cols[k][i] for k in range(n)] for i in range(n)]
        return det(matrix)

    def equal(self, A, B) -> bool:
        return all((a - b).is_zero() for a, b in zip(self.element(A), self.element(B)))

    # -- spanning sets ------------------------------------------------------
    def candidates(self, min_level: int = 1) -> list[Candidate]:
        """Integral elements whose norms span N(L^x)(K^x)^p / (K^x)^p.

        Ordered by level in L; the uniformizer of L comes first for the
        ramified shapes. ``min_level`` restricts to U_L^(min_level).
        """
        W = self.base
        F = W.residue
        p, f = self.p, W.f
        pe0 = W.pe0
        teich = [W.teichmuller(F.pow(F.gen(), j)) if f > 1 else W.one for j in range(f)]
        out: list[Candidate] = []
        if self.classification == UNRAMIFIED:
            for level in range(max(min_level, 1), pe0 + 1):
                pil = W.pi**level
                for k in range(p):
                    for j, w in enumerate(teich):
                        poly = self.element([1])
                        poly[k] = poly[k] + w * pil
                        out.append(Candidate(tuple(poly), level, f"1+w{j}*pi^{level}*Z^{k}"))
            return out
        top = p * p * int(W.e0)
        if min_level <= 0:
            min_level = 1
        upoly, _ = self.uniformizer
        out.append(Candidate(tuple(self.element(upoly)), HAS_UNIFORMIZER, "uniformizer"))
        if self.level == HAS_UNIFORMIZER:
            for level in range(min_level, top + 1):
                zl = self._zpow(level)
                for j, w in enumerate(teich):
                    poly = [w * c for c in zl]
                    poly[0] = poly[0] + 1
                    out.append(Candidate(tuple(poly), level, f"1+w{j}*Z^{level}"))
            return out
        i = self.level
        inv_i = pow(i, -1, p)
        for level in range(min_level, top + 1):
            k = (level * inv_i) % p
            rho = (k * i) % p
            a = (level - rho) // p
            s = (k * i) // p
            yk = _ypow(self, k)
            for j, w in enumerate(teich):
                # pi^s (1 + w pi^a Y^k / pi^s)
                poly = [w * W.pi**a * c for c in yk]
                poly[0] = poly[0] + W.pi**s
                out.append(Candidate(tuple(poly), level, f"1+w{j}*pi^{a}*Y^{k}/pi^{s}"))
        return out

    def _zpow(self, l: int) -> list[PadicElement]:
        q, r = divmod(l, self.p)
        poly = self.element([])
        poly[r] = self.radicand**q
        return poly


def _ypow(ext: KummerExtension, k: int) -> list[PadicElement]:
    poly = ext.element([1])
    y = ext.element([0, 1])
    for _ in range(k):
        poly = ext.mul(poly, y)
    return poly


@lru_cache(maxsize=None)
def _kummer_cached(K: PadicField, coords: tuple[int, ...]) -> KummerExtension:
    return KummerExtension(K, coords)


def kummer_line(K: PadicField, coords: tuple[int, ...]) -> tuple[KummerExtension, int]:
    """The Kummer extension for a nonzero class, plus r with class = r * line."""
    W = working_field(K)
    normalized, r = _normalize_line(tuple(c % K.p for c in coords), K.p)
    return _kummer_cached(W, normalized), r


@dataclass
class TrivialKummerExtension:
    """K(b^(1/p)) for b a p-th power: the degree-1 'extension' K itself."""

    base: PadicField
    beta: PadicElement
    classification: str = TRIVIAL_EXT
    degree: int = 1
    different_exponent: int = 0

    @property
    def defining_polynomial(self):
        return [-self.beta, self.base.one]

    def norm(self, A) -> PadicElement:
        return A[0]


def adjoin_pth_root(K: PadicField, b: PadicElement):
    """Extension handle for K(b^(1/p)); requires mu_p in K."""
    if b.is_zero():
        raise RootOfZero("cannot adjoin a p-th root of 0")
    if not K.has_integral_e0:
        raise NoPthRoots(f"mu_p is not contained in {K}")
    try:
        basis_data(K)
    except Exception as exc:  # NoMuP
        raise NoPthRoots(str(exc)) from exc
    coords = class_vector(b)
    if not any(coords):
        W = working_field(K)
        roots = hensel_roots([-W(b)] + [0] * (K.p - 1) + [1], W)
        if not roots:
            raise PrecisionLoss("class is trivial but no p-th root was found")
        return TrivialKummerExtension(W, roots[0])
    ext, _ = kummer_line(K, coords)
    return ext


def relative_norm(L, y) -> PadicElement:
    """N_{L/K}(y) for a Kummer handle or tower edge."""
    return L.norm(y)


# -- tower edges -----------------------------------------------------------------
def _inverse_mod(matrix: list[list[int]], p: int, mod: int) -> list[list[int]]:
    n = len(matrix)
    aug = [[x % mod for x in row] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] % p)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, mod)
        aug[col] = [(x * inv) % mod for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [(x - c * y) % mod for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


class TowerEdge:
    """An inclusion K -> L of tower-form fields with restriction and norm."""

    def __init__(self, base: PadicField, top: PadicField, kind: str, degree: int):
        self.base = base
        self.top = top
        self.kind = kind
        self.degree = degree

    def embed(self, x: PadicElement) -> PadicElement:
        raise NotImplementedError

    def decompose(self, z: PadicElement) -> list[PadicElement]:
        """Coordinates of z in the O_K-basis of O_L used by this edge."""
        raise NotImplementedError

    def basis(self) -> list[PadicElement]:
        raise NotImplementedError

    def restrict(self, x: PadicElement) -> PadicElement:
        if x.field.shape != self.base.shape:
            raise EdgeMismatch("element is not over the base of this edge")
        return self.embed(x)

    def norm(self, z: PadicElement) -> PadicElement:
        if z.field.shape != self.top.shape:
            raise EdgeMismatch("element is not over the top of this edge")
        cols = [self.decompose(z * b) for b in self.basis()]
        n = self.degree
        return det([[cols[k][i] for k in range(n)] for i in range(n)])

    def __repr__(self):
        return f"TowerEdge({self.kind}, degree {self.degree})"


class RamifiedRootEdge(TowerEdge):
    """K -> K(pi^(1/d)), presented by the Eisenstein polynomial E(X^d)."""

    def __init__(self, K: PadicField, d: int):
        eis = [0] * (K.e * d + 1)
        for t, c in enumerate(K.eisenstein):
            eis[t * d] = c
        L = PadicField(K.p, K.f, tuple(eis), K.N * d)
        super().__init__(K, L, "ramified", d)

    def embed(self, x):
        K, L, d = self.base, self.top, self.degree
        f = K.f
        c = [0] * (L.e * f)
        for i in range(K.e):
            for j in range(f):
                c[(i * d) * f + j] = x.c[i * f + j]
        return L.element(c, x.prec * d)

    def basis(self):
        L = self.top
        return [L.pi**r for r in range(self.degree)]

    def decompose(self, z):
        K, L, d = self.base, self.top, self.degree
        f = K.f
        out = []
        for r in range(d):
            c = [0] * (K.e * f)
            for i in range(K.e):
                for j in range(f):
                    c[i * f + j] = z.c[(i * d + r) * f + j]
            out.append(K.element(c, z.prec // d))
        return out


class UnramifiedEdge(TowerEdge):
    """K -> the unramified extension of degree d (same Eisenstein polynomial)."""

    def __init__(self, K: PadicField, d: int):
        L = PadicField(K.p, K.f * d, K.eisenstein, K.N)
        super().__init__(K, L, "unramified", d)
        g = K.residue.modulus
        unram = PadicField(K.p, L.f, (-K.p, 1), L.M)  # O_0 of L, pi = p
        roots = hensel_roots(list(g), unram)
        if not roots:
            raise AssertionError("residue polynomial has no root in the extension")
        r = roots[0]
        self._r = [L.element(list((r**j).c)) for j in range(K.f)]
        # columns r^j y'^k, indexed (k, j), as Z_p-vectors in the y'-basis
        yprime = L.element([0, 1]) if L.f > 1 else L.one
        cols = []
        self._basis = [yprime**k for k in range(d)]
        for k in range(d):
            for j in range(K.f):
                v = self._r[j] * self._basis[k]
                cols.append(list(v.c[:L.f]))
        n = L.f
        T = [[cols[c][i] for c in range(n)] for i in range(n)]
        self._Tinv = _inverse_mod(T, K.p, L.modulus)

    def embed(self, x):
        K, L = self.base, self.top
        f = K.f
        acc = L.zero
        pil = L.one
        for i in range(K.e):
            block = L.zero
            for j in range(f):
                if x.c[i * f + j]:
                    block = block + self._r[j] * x.c[i * f + j]
            acc = acc + block * pil
            pil = pil * L.pi
        return L.element(list(acc.c), x.prec)

    def basis(self):
        return list(self._basis)

    def decompose(self, z):
        K, L, d = self.base, self.top, self.degree
        f, n = K.f, L.f
        out_c = [[0] * (K.e * f) for _ in range(d)]
        for i in range(K.e):
            v = z.c[i * n:(i + 1) * n]
            sol = [sum(self._Tinv[a][b] * v[b] for b in range(n)) for a in range(n)]
            for k in range(d):
                for j in range(f):
                    out_c[k][i * f + j] = sol[k * f + j]
        return [K.element(c, z.prec) for c in out_c]


def ramified_root_extension(K: PadicField, d: int) -> RamifiedRootEdge:
    return RamifiedRootEdge(K, d)


def unramified_extension(K: PadicField, d: int) -> UnramifiedEdge:
    return UnramifiedEdge(K, d)
