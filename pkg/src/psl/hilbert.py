"""The degree-p Hilbert pairing on K^x/(K^x)^p.

Triviality is decided by norm membership: ``(a, b) = 1`` exactly when ``a``
is a norm from ``K(b^(1/p))``. Each basis class ``b_j`` therefore determines
its column of the pairing matrix up to a scalar (the annihilator of a
codimension-one norm subgroup). The scalars are tied together by
bilinearity, and one global scalar is fixed by the value on
``(pi, 1 + c0 pi^(p e0))``, which is read off from the Artin-Schreier
equation of the unramified Kummer extension:

    exponent(pi, 1 + c0 pi^(p e0)) = Tr(c0 / t^p),   zeta = 1 + t pi^e0 + ...

with ``pi`` acting as arithmetic Frobenius. This choice agrees with the
projection formula across extensions, which a "first nonzero entry is 1"
convention would not.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

from . import linalg
from .errors import DegeneratePairing, NoMuP, TrivialKummer
from .extensions import kummer_line
from .filtration import (
    FULL,
    UnitClass,
    basis_data,
    class_vector,
    primitive_pth_root,
    subgroup_indices,
    working_field,
)
from .padic import PadicElement, PadicField

Level = Union[int, str]
ClassLike = Union[PadicElement, UnitClass, Sequence[int]]


def _coords(K: PadicField, x: ClassLike) -> tuple[int, ...]:
    if isinstance(x, UnitClass):
        return tuple(x.coords)
    if isinstance(x, PadicElement):
        return class_vector(x)
    return tuple(int(c) % K.p for c in x)


def _require_mu_p(K: PadicField) -> PadicField:
    if not K.has_integral_e0:
        raise NoMuP(f"mu_p is not contained in {K}")
    W = working_field(K)
    primitive_pth_root(W)
    return W


@lru_cache(maxsize=None)
def _line_norm_rows(K: PadicField, line: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    ext, _ = kummer_line(K, line)
    p, d = K.p, basis_data(K).dim
    rows: list[list[int]] = []
    for cand in ext.candidates():
        v = list(class_vector(ext.norm(list(cand.poly))))
        if not linalg.in_span(v, rows, p):
            rows.append(v)
            if len(rows) == d - 1:
                break
    if len(rows) != d - 1:
        raise DegeneratePairing(
            f"norm classes of the extension span dimension {len(rows)}, expected {d - 1}"
        )
    echelon, _ = linalg.echelon(rows, p)
    return tuple(tuple(r) for r in echelon)


def norm_subgroup_of_class(K: PadicField, coords: Sequence[int]) -> list[list[int]]:
    """Echelon basis of N(L^x)(K^x)^p/(K^x)^p for L = K(b^(1/p)), b given by class."""
    W = _require_mu_p(K)
    coords = tuple(int(c) % K.p for c in coords)
    if not any(coords):
        raise TrivialKummer("b is a p-th power; every class is a norm")
    ext, _ = kummer_line(W, coords)
    return [list(r) for r in _line_norm_rows(W, ext.canonical_coords)]


def norm_subgroup(K: PadicField, b: PadicElement) -> list[list[int]]:
    """Basis (rows, in kstar_basis coordinates) of the norm subgroup for K(b^(1/p))."""
    return norm_subgroup_of_class(K, class_vector(b))


def symbol_trivial(a: ClassLike, b: ClassLike, K: PadicField | None = None) -> bool:
    """True iff (a, b) = 1, decided by membership of a in the norm subgroup of b."""
    if K is None:
        K = (a if isinstance(a, PadicElement) else b).field  # type: ignore[union-attr]
    va, vb = _coords(K, a), _coords(K, b)
    if not any(va) or not any(vb):
        return True
    rows = norm_subgroup_of_class(K, vb)
    return linalg.in_span(list(va), rows, K.p)


def _annihilator(rows: Sequence[Sequence[int]], d: int, p: int) -> list[int]:
    null = linalg.nullspace(rows, d, p)
    if len(null) != 1:
        raise DegeneratePairing(f"norm subgroup has codimension {len(null)}, expected 1")
    return list(null[0])


@dataclass(frozen=True)
class PairingMatrix:
    """exponent(a, b) = a^T M b over F_p, in kstar_basis coordinates."""

    field: PadicField
    matrix: tuple[tuple[int, ...], ...]
    certificate: dict

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def size(self) -> int:
        return len(self.matrix)

    def entry(self, i: int, j: int) -> int:
        return self.matrix[i][j]

    def exponent(self, a: Sequence[int], b: Sequence[int]) -> int:
        return linalg.bilinear(list(a), [list(r) for r in self.matrix], list(b), self.p)

    def rank(self) -> int:
        return linalg.rank([list(r) for r in self.matrix], self.p)

    def is_skew(self) -> bool:
        p, n = self.p, self.size
        return all((self.matrix[i][j] + self.matrix[j][i]) % p == 0 for i in range(n) for j in range(n))

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.matrix]


def reference_exponent(K: PadicField) -> int:
    """Tr(c0 / t^p): the exponent of (pi, 1 + c0 pi^(p e0)) for the field's zeta."""
    data = basis_data(K)
    F = data.field.residue
    return F.trace(F.mul(data.c0, F.inv(F.pow(data.t_zeta, K.p)))) % K.p


@lru_cache(maxsize=None)
def _pairing(W: PadicField) -> PairingMatrix:
    data = basis_data(W)
    p, d = W.p, data.dim
    top = d - 1  # the level-p*e0 class
    unit = [tuple(1 if k == j else 0 for k in range(d)) for j in range(d)]
    phi = [_annihilator(norm_subgroup_of_class(W, unit[j]), d, p) for j in range(d)]
    s = reference_exponent(W)
    if s == 0 or phi[top][0] % p == 0:
        raise DegeneratePairing("reference pair does not pair nontrivially")
    lam = s * pow(phi[top][0], -1, p) % p
    cols: list[list[int]] = [[]] * d
    cols[top] = [(lam * x) % p for x in phi[top]]
    for k in range(d):
        if k == top:
            continue
        both = tuple((unit[top][i] + unit[k][i]) % p for i in range(d))
        target = _annihilator(norm_subgroup_of_class(W, both), d, p)
        found = None
        for mu in range(1, p):
            col = [(mu * x) % p for x in phi[k]]
            combined = [(a + b) % p for a, b in zip(cols[top], col)]
            if linalg.rank([combined, target], p) == 1:
                found = col
                break
        if found is None:
            raise DegeneratePairing(f"no bilinear scalar for basis column {k}")
        cols[k] = found
    matrix = tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))
    pm = PairingMatrix(
        W,
        matrix,
        {
            "pair": ("pi", f"1+c0*pi^{W.pe0}"),
            "indices": (0, top),
            "exponent": s,
            "rule": "Tr(c0/t^p), zeta = 1 + t*pi^e0 + ...",
        },
    )
    if pm.rank() != d:
        raise DegeneratePairing(f"pairing matrix has rank {pm.rank()} < {d}")
    if not pm.is_skew():
        raise DegeneratePairing("pairing matrix is not skew-symmetric")
    return pm


def pairing_matrix(K: PadicField) -> PairingMatrix:
    """The pairing matrix on kstar_basis(K); computed once per field shape."""
    return _pairing(_require_mu_p(K))


def zeta_power(K: PadicField, zeta: PadicElement) -> int:
    """s with zeta == zeta_K^s for the field's reference root zeta_K."""
    W = working_field(K)
    z0 = primitive_pth_root(W)
    z = W(zeta)
    acc = W.one
    for s in range(1, K.p):
        acc = acc * z0
        if (acc - z).is_zero() or (acc - z).valuation() > W.pe0:
            return s
    raise ValueError("not a primitive p-th root of unity")


def exponent(a: ClassLike, b: ClassLike, K: PadicField | None = None, zeta: PadicElement | None = None) -> int:
    """e in F_p with (a, b) = zeta^e; zeta defaults to the field's reference root."""
    if K is None:
        K = (a if isinstance(a, PadicElement) else b).field  # type: ignore[union-attr]
    pm = pairing_matrix(K)
    e = pm.exponent(_coords(K, a), _coords(K, b))
    if zeta is not None:
        e = e * pow(zeta_power(K, zeta), -1, K.p) % K.p
    return e


def image_order(K: PadicField, m: Level, n: Level) -> int:
    """Order of the pairing image of U-bar^m x U-bar^n (FULL allowed); 1 or p."""
    pm = pairing_matrix(K)
    rows = subgroup_indices(pm.field, m)
    cols = subgroup_indices(pm.field, n)
    nontrivial = any(pm.matrix[i][j] % K.p for i in rows for j in cols)
    return K.p if nontrivial else 1


def predicted_image_order(K: PadicField, m: Level, n: Level) -> int:
    """The closed-form order: FULL x m iff m <= p e0; otherwise by m + n."""
    if not K.has_integral_e0:
        raise NoMuP(f"mu_p is not contained in {K}")
    p, pe0 = K.p, K.pe0
    if m == FULL and n == FULL:
        return p
    if m == FULL or n == FULL:
        lv = n if m == FULL else m
        return p if max(int(lv), 0) <= pe0 else 1
    m, n = max(int(m), 0), max(int(n), 0)
    if m > pe0 or n > pe0:
        return 1
    if m % p or n % p:
        return p if m + n <= pe0 else 1
    return p if m + n < pe0 else 1


def image_order_table(K: PadicField, top: int | None = None) -> list[dict]:
    """Every cell (m, n) in [0, top]^2 plus FULL rows, computed and predicted."""
    if top is None:
        top = K.pe0 + 1
    levels: list[Level] = [FULL] + list(range(top + 1))
    out = []
    for m in levels:
        for n in levels:
            got = image_order(K, m, n)
            want = predicted_image_order(K, m, n)
            out.append({"m": m, "n": n, "order": got, "predicted": want, "match": got == want})
    return out


# -- identities from symbol calculus ------------------------------------------------
def sigma_kernel_cokernel_dims(K: PadicField) -> tuple[int, int]:
    """(dim ker, dim coker) of x -> x^p + a x on the residue field."""
    data = basis_data(working_field(K))
    p, f = K.p, K.f
    r = linalg.rank(data.sigma_matrix, p)
    return f - r, f - r


def bloch_kato_check(K: PadicField, x, n: int) -> tuple[int, int]:
    """(exponent(1+x pi^(pe0-n), 1+pi^n), -n * exponent(1+x pi^pe0, pi)) for residue x."""
    W = working_field(K)
    pe0, p = W.pe0, W.p
    xt = W.lift(x)
    lhs = exponent(W.one + xt * W.pi ** (pe0 - n), W.one + W.pi**n, W)
    rhs = (-n * exponent(W.one + xt * W.pi**pe0, W.pi, W)) % p
    return lhs, rhs


def sigma_kernel_check(K: PadicField, x) -> int:
    """exponent(1 + (x^p + a x) pi^(pe0), pi); zero for every residue x."""
    W = working_field(K)
    F = W.residue
    data = basis_data(W)
    c = F.add(F.pow(x, W.p), F.mul(data.a, x))
    return exponent(W.one + W.lift(c) * W.pi**W.pe0, W.pi, W)
