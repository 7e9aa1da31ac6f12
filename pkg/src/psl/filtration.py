"""K^x/(K^x)^p as an F_p-vector space, with the higher-unit filtration.

Coordinates are taken in a canonical basis:

* index 0: the uniformizer pi;
* for every level ``0 < i < p*e0`` with ``p`` not dividing ``i``: the ``f``
  classes ``1 + w_j pi^i``, with ``w_j`` the Teichmuller lift of ``y^j``;
* one class ``1 + c0 pi^(p*e0)`` where ``c0`` is the first residue (in
  :meth:`ResidueField.elements` order) outside the image of
  ``sigma(x) = x^p + a x``, ``a`` being the residue of ``p / pi^e``.

:func:`class_vector` reduces an element level by level against this basis;
it is exact as long as the element is known past level ``p*e0``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence, Union

from . import linalg
from .errors import DegenerateBasis, NoMuP, NotAUnit, PrecisionLoss
from .padic import PadicElement, PadicField, hensel_roots
from .residue import Elem

TRIVIAL = "trivial"
HAS_UNIFORMIZER = "has-uniformizer"
FULL = "full"

Level = Union[int, str]


def working_field(K: PadicField) -> PadicField:
    """K with enough precision for Kummer norms and class extraction."""
    if not K.has_integral_e0:
        return K
    return _canonical(K)


@lru_cache(maxsize=None)
def primitive_pth_root(K: PadicField) -> PadicElement:
    """The first (in root order) primitive p-th root of unity in K."""
    if not K.has_integral_e0:
        raise NoMuP(f"e0 = {K.e0} is not integral, so mu_p is not contained in {K}")
    roots = hensel_roots([1] * K.p, K)
    if not roots:
        raise NoMuP(f"mu_p is not contained in {K}")
    return roots[0]


@dataclass(frozen=True)
class UnitClass:
    """A class in K^x/(K^x)^p, in canonical coordinates over F_p."""

    field: PadicField
    coords: tuple[int, ...]
    rep: PadicElement | None = field(default=None, compare=False, repr=False)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def level(self) -> Level:
        if self.coords[0] % self.p:
            return HAS_UNIFORMIZER
        levels = basis_data(self.field).levels
        for idx, c in enumerate(self.coords):
            if idx and c % self.p:
                return levels[idx]
        return TRIVIAL

    def is_trivial(self) -> bool:
        return not any(c % self.p for c in self.coords)

    def __mul__(self, other: "UnitClass") -> "UnitClass":
        if other.field.shape != self.field.shape:
            from .errors import FieldMismatch
            raise FieldMismatch("classes over different fields")
        rep = self.rep * other.rep if self.rep is not None and other.rep is not None else None
        return UnitClass(self.field, tuple((a + b) % self.p for a, b in zip(self.coords, other.coords)), rep)

    def __pow__(self, k: int) -> "UnitClass":
        rep = None
        if self.rep is not None and k >= 0:
            rep = self.rep**k
        return UnitClass(self.field, tuple((k * a) % self.p for a in self.coords), rep)

    def representative(self) -> PadicElement:
        """An element of O_K in the class (the stored one, or a basis product)."""
        if self.rep is not None:
            return self.rep
        return basis_product(self.field, self.coords)


@dataclass
class BasisData:
    """Everything derived once per field: basis, sigma, zeta."""

    field: PadicField  # working-precision field
    levels: list[Level]
    reps: list[PadicElement]
    inv_reps: list[PadicElement]
    level_index: dict[int, list[int]]
    a: Elem
    c0: Elem
    sigma_matrix: list[list[int]]
    zeta: PadicElement
    t_zeta: Elem

    @property
    def dim(self) -> int:
        return len(self.levels)


def sigma_map(K: PadicField):
    """The additive map x -> x^p + a x on the residue field."""
    F = K.residue
    a = K.residue_of_p_over_pi_e()
    return lambda x: F.add(F.frobenius(x), F.mul(a, x))


@lru_cache(maxsize=None)
def _basis_data(K: PadicField) -> BasisData:
    if not K.has_integral_e0:
        raise NoMuP(f"e0 = {K.e0} is not integral")
    zeta = primitive_pth_root(K)
    p, f, pe0, e0 = K.p, K.f, K.pe0, int(K.e0)
    F = K.residue
    sigma = sigma_map(K)
    S = F.linear_map_matrix(sigma)
    image_rank = linalg.rank([list(col) for col in zip(*S)], p)
    c0 = None
    for c in F.elements():
        if F.is_zero(c):
            continue
        cols = [list(col) for col in zip(*S)]
        if linalg.rank(cols + [list(c)], p) > image_rank:
            c0 = c
            break
    if c0 is None:
        raise DegenerateBasis("sigma is surjective; mu_p must be missing")
    levels: list[Level] = [HAS_UNIFORMIZER]
    reps = [K.pi]
    level_index: dict[int, list[int]] = {}
    for i in range(1, pe0):
        if i % p == 0:
            continue
        for j in range(f):
            w = K.teichmuller(F.pow(F.gen(), j)) if f > 1 else K.one
            level_index.setdefault(i, []).append(len(reps))
            levels.append(i)
            reps.append(1 + w * K.pi**i)
    level_index[pe0] = [len(reps)]
    levels.append(pe0)
    reps.append(1 + K.teichmuller(c0) * K.pi**pe0)
    inv_reps = [K.one] + [r.inverse() for r in reps[1:]]
    t_zeta = (zeta - 1).shift(-e0).residue()
    data = BasisData(K, levels, reps, inv_reps, level_index, K.residue_of_p_over_pi_e(),
                     c0, S, zeta, t_zeta)
    if len(levels) != K.degree + 2:
        raise DegenerateBasis(f"basis size {len(levels)} != [K:Q_p] + 2")
    return data


def basis_data(K: PadicField) -> BasisData:
    return _basis_data(_canonical(K))


def _canonical(K: PadicField) -> PadicField:
    # one working field per shape, so precision and name do not split caches
    if not K.has_integral_e0:
        return K
    p, e0 = K.p, int(K.e0)
    return PadicField(p, K.f, K.eisenstein, p * p * e0 + 2 * p * e0 + 10)


def dimension(K: PadicField) -> int:
    """dim_{F_p} K^x/(K^x)^p."""
    return basis_data(K).dim


def class_vector(x: PadicElement) -> tuple[int, ...]:
    """Coordinates of the class of a nonzero x in K^x/(K^x)^p."""
    data = basis_data(x.field)
    K = data.field
    x = K(x)
    p, f, pe0, e0 = K.p, K.f, K.pe0, int(K.e0)
    F = K.residue
    coords = [0] * data.dim
    v = x.valuation()
    coords[0] = v % p
    if x.prec - v <= pe0:
        raise PrecisionLoss(f"need precision > v + p*e0 = {v + pe0}, have {x.prec}")
    u = x.shift(-v) if v else x
    u = u * K.teichmuller(F.inv(u.residue()))
    while True:
        w = u - 1
        if w.is_zero():
            if w.prec <= pe0:
                raise PrecisionLoss("precision exhausted before level p*e0")
            break
        i = w.valuation()
        if i > pe0:
            break
        c = w.shift(-i).residue()
        if i < pe0 and i % p:
            for j, idx in enumerate(data.level_index[i]):
                cj = c[j]
                coords[idx] = (coords[idx] + cj) % p
                if cj:
                    u = u * data.inv_reps[idx] ** cj
        elif i < pe0:
            d = F.pth_root(c)
            u = u * (1 + K.lift(d) * K.pi ** (i // p)).inverse() ** p
        else:
            sol = linalg.solve_combination(
                [list(data.c0)] + [list(col) for col in zip(*data.sigma_matrix)], list(c), p
            )
            if sol is None:
                raise DegenerateBasis("level p*e0 residue not in span of c0 and im(sigma)")
            lam, xs = sol[0], tuple(sol[1:])
            idx = data.level_index[pe0][0]
            coords[idx] = (coords[idx] + lam) % p
            if lam:
                u = u * data.inv_reps[idx] ** lam
            if any(xs):
                u = u * (1 + K.lift(xs) * K.pi**e0).inverse() ** p
    return tuple(coords)


def unit_class(x: PadicElement) -> UnitClass:
    return UnitClass(_canonical(x.field), class_vector(x), x)


def kstar_basis(K: PadicField) -> list[UnitClass]:
    """Canonical basis of K^x/(K^x)^p, each class carrying its representative."""
    data = basis_data(K)
    out = []
    for idx, rep in enumerate(data.reps):
        coords = tuple(1 if k == idx else 0 for k in range(data.dim))
        out.append(UnitClass(_canonical(K), coords, rep))
    return out


def basis_levels(K: PadicField) -> list[Level]:
    return list(basis_data(K).levels)


def basis_product(K: PadicField, coords: Sequence[int]) -> PadicElement:
    """prod basis_i ** coords_i as an element of O_K (coords reduced mod p)."""
    data = basis_data(K)
    acc = data.field.one
    for rep, c in zip(data.reps, coords):
        c %= K.p
        if c:
            acc = acc * rep**c
    return acc


def filtration_level(x: Union[PadicElement, UnitClass]) -> Level:
    """Largest m with the class of x in U-bar^m; TRIVIAL for p-th powers."""
    if isinstance(x, UnitClass):
        return x.level
    if x.valuation() != 0:
        raise NotAUnit("filtration level is defined for units")
    return unit_class(x).level


def subgroup_indices(K: PadicField, m: Level) -> list[int]:
    """Basis indices spanning U-bar^m (or everything for FULL)."""
    data = basis_data(K)
    if m == FULL:
        return list(range(data.dim))
    if m == TRIVIAL:
        return []
    m = max(int(m), 1)
    return [i for i, lv in enumerate(data.levels) if isinstance(lv, int) and lv >= m]


def subgroup_dim(K: PadicField, m: Level) -> int:
    """dim_{F_p} of U-bar^m; FULL gives the whole of K^x/(K^x)^p."""
    return len(subgroup_indices(K, m))


def predicted_subgroup_dim(K: PadicField, m: Level) -> int:
    if not K.has_integral_e0:
        raise NoMuP(f"e0 = {K.e0} is not integral")
    if m == FULL:
        return K.degree + 2
    if m == TRIVIAL:
        return 0
    m, pe0, p = int(m), K.pe0, K.p
    if m > pe0:
        return 0
    return 1 + K.f * sum(1 for i in range(max(m, 1), pe0) if i % p)


def predicted_graded_dim(K: PadicField, m: int) -> int:
    pe0, p = K.pe0, K.p
    if m < pe0:
        return K.f if m % p else 0
    return 1 if m == pe0 else 0


def graded_dimensions(K: PadicField, max_level: int) -> list[int]:
    """dim U-bar^m / U-bar^(m+1) for m = 0..max_level, from explicit generators.

    U^m is generated by 1 + w pi^i (w Teichmuller, i >= m) and, for m = 0,
    by the Teichmuller units; the rank of their classes is computed directly.
    """
    data = basis_data(K)
    W = data.field
    F = W.residue
    p = W.p
    top = max(max_level + 1, W.pe0 + 1)
    gens_at: dict[int, list[tuple[int, ...]]] = {}
    for i in range(1, top + 2):
        gens_at[i] = [class_vector(1 + W.teichmuller(F.pow(F.gen(), j)) * W.pi**i) if W.f > 1
                      else class_vector(1 + W.pi**i)
                      for j in range(W.f)]
    teich = [class_vector(W.teichmuller(r)) for r in F.elements() if not F.is_zero(r)]

    def rank_from(m: int) -> int:
        rows = [list(v) for i in range(max(m, 1), top + 2) for v in gens_at[i]]
        if m == 0:
            rows += [list(v) for v in teich]
        return linalg.rank(rows, p) if rows else 0

    ranks = [rank_from(m) for m in range(max_level + 2)]
    return [ranks[m] - ranks[m + 1] for m in range(max_level + 1)]


def basis_csv(K: PadicField) -> str:
    """CSV dump: level, representative pi-expansion, coordinates."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["level", "representative", "coordinates"])
    data = basis_data(K)
    for cls in kstar_basis(K):
        idx = cls.coords.index(1)
        digits = cls.rep.pi_adic_digits(K.pe0 + 1)
        expansion = " ".join(
            "".join(map(str, d)) if K.f > 1 else str(d[0]) for d in digits
        )
        writer.writerow([data.levels[idx], expansion, "".join(map(str, cls.coords))])
    return buf.getvalue()
