"""Elliptic curves over a p-adic field: reduction type, formal group, t0.

Coefficients stay exact integers when the Weierstrass model is defined over
Z (the usual case for test curves), and are otherwise elements of the field.
Valuations are always normalized for K (``v_K(pi) = 1``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

from .errors import (
    AdditiveRefused,
    NonIntegralTorsionValuation,
    NonsplitUnsupported,
    NotGoodReduction,
    NotMinimal,
    NotSupersingular,
    NoMuP,
    SingularCurve,
    TruncationTooSmall,
)
from .filtration import subgroup_dim
from .padic import PadicElement, PadicField

Coeff = Union[int, PadicElement]

GOOD_ORDINARY = "good-ordinary"
GOOD_SUPERSINGULAR = "good-supersingular"
SPLIT_MULTIPLICATIVE = "split-multiplicative"
NONSPLIT_MULTIPLICATIVE = "nonsplit-multiplicative"
ADDITIVE = "additive"
REDUCTION_CLASSES = (GOOD_ORDINARY, GOOD_SUPERSINGULAR, SPLIT_MULTIPLICATIVE, NONSPLIT_MULTIPLICATIVE, ADDITIVE)

INF = math.inf


def _vp(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def coeff_valuation(c: Coeff, K: PadicField) -> float:
    """v_K of an integer or field element; infinity for zero."""
    if isinstance(c, int):
        return INF if c == 0 else K.e * _vp(c, K.p)
    return INF if c.is_zero() else c.valuation()


def _residue(c: Coeff, K: PadicField):
    if isinstance(c, int):
        return K.residue.from_int(c)
    return c.residue()


# -- the model --------------------------------------------------------------------
@dataclass
class CurveModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over O_K."""

    field: PadicField
    a: tuple[Coeff, ...]
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        K = self.field
        if len(self.a) != 5:
            raise ValueError("need five Weierstrass coefficients a1, a2, a3, a4, a6")
        coeffs: list[Coeff] = []
        for x in self.a:
            if isinstance(x, (list, tuple)):
                x = K(list(x))
            elif isinstance(x, PadicElement):
                x = K(x)
            elif isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError("Weierstrass coefficients must be integral")
                x = int(x)
            coeffs.append(x)
        if not all(isinstance(x, int) for x in coeffs):
            coeffs = [K(x) if isinstance(x, int) else x for x in coeffs]
        self.a = tuple(coeffs)
        if self.is_zero(self.discriminant):
            raise SingularCurve("discriminant vanishes at working precision")

    # invariants
    @property
    def exact(self) -> bool:
        return all(isinstance(x, int) for x in self.a)

    def is_zero(self, c: Coeff) -> bool:
        return c == 0 if isinstance(c, int) else c.is_zero()

    def v(self, c: Coeff) -> float:
        return coeff_valuation(c, self.field)

    @cached_property
    def b_invariants(self) -> tuple[Coeff, Coeff, Coeff, Coeff]:
        a1, a2, a3, a4, a6 = self.a
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @cached_property
    def c4(self) -> Coeff:
        b2, b4, _, _ = self.b_invariants
        return b2 * b2 - 24 * b4

    @cached_property
    def c6(self) -> Coeff:
        b2, b4, b6, _ = self.b_invariants
        return -(b2 * b2 * b2) + 36 * b2 * b4 - 216 * b6

    @cached_property
    def discriminant(self) -> Coeff:
        b2, b4, b6, b8 = self.b_invariants
        return -(b2 * b2 * b8) - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def v_discriminant(self) -> int:
        return int(self.v(self.discriminant))

    @property
    def v_j(self) -> float:
        """v_K(j) = 3 v(c4) - v(Delta)."""
        return 3 * self.v(self.c4) - self.v_discriminant

    def base_change(self, L: PadicField) -> "CurveModel":
        if not self.exact:
            raise ValueError("base change is only supported for models over Z")
        return CurveModel(L, self.a, self.name)

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "a": [x if isinstance(x, int) else [list(x.c)] for x in self.a]}

    @classmethod
    def from_json(cls, doc: dict, fields: dict[str, PadicField] | None = None) -> "CurveModel":
        ref = doc["field"]
        if isinstance(ref, str):
            if not fields or ref not in fields:
                raise KeyError(f"unknown field {ref!r}")
            K = fields[ref]
        else:
            K = PadicField.from_json(ref)
        return cls(K, tuple(doc["a"]), doc.get("name", ""))


def minimal_model(E: CurveModel) -> CurveModel:
    """A model with v(Delta) < 12 or v(c4) < 4, rescaling by pi for p >= 5."""
    K = E.field
    for _ in range(E.v_discriminant // 12 + 1):
        if E.v_discriminant < 12 or E.v(E.c4) < 4:
            return E
        if E.v(E.c6) < 6:
            return E
        if K.p == 3:
            raise NotMinimal("minimal-model reduction at p = 3 is not implemented")
        # p >= 5: y^2 = x^3 - 27 c4' x - 54 c6' with c4' = c4/pi^4, c6' = c6/pi^6
        c4 = K(E.c4).shift(-4)
        c6 = K(E.c6).shift(-6)
        E = CurveModel(K, (K.zero, K.zero, K.zero, -27 * c4, -54 * c6), E.name)
    raise NotMinimal("minimal-model pass did not terminate")


def _residue_equation(E: CurveModel):
    K = E.field
    F = K.residue
    a1, a2, a3, a4, a6 = (_residue(x, K) for x in E.a)

    def value(x, y):
        lhs = F.add(F.add(F.mul(y, y), F.mul(F.mul(a1, x), y)), F.mul(a3, y))
        x2 = F.mul(x, x)
        rhs = F.add(F.add(F.add(F.mul(x2, x), F.mul(a2, x2)), F.mul(a4, x)), a6)
        return F.sub(lhs, rhs)

    return F, (a1, a2, a3, a4, a6), value


def residue_point_count(E: CurveModel) -> int:
    """#E~(F_q) including the point at infinity, by exhaustion."""
    F, _, value = _residue_equation(E)
    elems = list(F.elements())
    return 1 + sum(1 for x in elems for y in elems if F.is_zero(value(x, y)))


def frobenius_trace(E: CurveModel) -> int:
    q = E.field.p ** E.field.f
    return q + 1 - residue_point_count(E)


def _singular_point(E: CurveModel):
    F, (a1, a2, a3, a4, a6), value = _residue_equation(E)
    for x in F.elements():
        for y in F.elements():
            if not F.is_zero(value(x, y)):
                continue
            # partial derivatives
            fy = F.add(F.add(F.scale(2, y), F.mul(a1, x)), a3)
            fx = F.sub(F.mul(a1, y), F.add(F.add(F.scale(3, F.mul(x, x)), F.scale(2, F.mul(a2, x))), a4))
            if F.is_zero(fx) and F.is_zero(fy):
                return x, y
    raise AssertionError("multiplicative reduction without a residue singular point")


def classify_reduction(E: CurveModel) -> str:
    """One of the five reduction classes, after a minimal-model pass."""
    E = minimal_model(E)
    if E.v_discriminant == 0:
        return GOOD_SUPERSINGULAR if frobenius_trace(E) % E.field.p == 0 else GOOD_ORDINARY
    if E.v(E.c4) > 0:
        return ADDITIVE
    F, (a1, a2, _, _, _), _ = _residue_equation(E)
    x0, _ = _singular_point(E)
    disc = F.add(F.mul(a1, a1), F.scale(4, F.add(F.scale(3, x0), a2)))
    return SPLIT_MULTIPLICATIVE if F.is_square(disc) else NONSPLIT_MULTIPLICATIVE


# -- truncated power series -------------------------------------------------------------
def _umul(A: list, B: list, D: int) -> list:
    out = [0] * (D + 1)
    for i, a in enumerate(A):
        if _zero(a):
            continue
        for j in range(0, D + 1 - i):
            b = B[j] if j < len(B) else 0
            if not _zero(b):
                out[i + j] = out[i + j] + a * b
    return out


def _zero(c) -> bool:
    return c == 0 if isinstance(c, int) else c.is_zero()


Bi = dict  # (i, j) -> coefficient, total degree <= D


def _badd(*terms: Bi) -> Bi:
    out: Bi = {}
    for t in terms:
        for k, v in t.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if not _zero(v)}


def _bscale(A: Bi, c) -> Bi:
    return {k: v * c for k, v in A.items() if not _zero(v * c)}


def _bmul(A: Bi, B: Bi, D: int) -> Bi:
    out: Bi = {}
    for (i1, j1), u in A.items():
        for (i2, j2), v in B.items():
            if i1 + j1 + i2 + j2 <= D:
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + u * v
    return {k: v for k, v in out.items() if not _zero(v)}


def _binv_unit(U: Bi, D: int) -> Bi:
    """1/(1 + U) for U without constant term."""
    inv: Bi = {(0, 0): 1}
    for _ in range(D):
        inv = _badd({(0, 0): 1}, _bscale(_bmul(U, inv, D), -1))
    return inv


def _w_series(a: Sequence[Coeff], D: int) -> list:
    """w(z) = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3 to degree D."""
    a1, a2, a3, a4, a6 = a
    w = [0] * (D + 1)
    for _ in range(D):
        w2 = _umul(w, w, D)
        w3 = _umul(w2, w, D)
        new = [0] * (D + 1)
        if D >= 3:
            new[3] = 1
        for n in range(D + 1):
            if n >= 1:
                new[n] = new[n] + a1 * w[n - 1] + a4 * w2[n - 1]
            if n >= 2:
                new[n] = new[n] + a2 * w[n - 2]
            new[n] = new[n] + a3 * w2[n] + a6 * w3[n]
        w = new
    return w


@dataclass
class FormalGroupSeries:
    """F(X, Y) truncated at total degree ``order`` plus the [p]-series."""

    curve: CurveModel
    order: int
    law: Bi

    def evaluate(self, f: list, g: list, D: int | None = None) -> list:
        """F(f(T), g(T)) truncated at T^D for series without constant term."""
        D = self.order if D is None else D
        maxi = max((i for i, _ in self.law), default=0)
        maxj = max((j for _, j in self.law), default=0)
        fp = [[1] + [0] * D]
        for _ in range(maxi):
            fp.append(_umul(fp[-1], f, D))
        gp = [[1] + [0] * D]
        for _ in range(maxj):
            gp.append(_umul(gp[-1], g, D))
        out = [0] * (D + 1)
        for (i, j), c in self.law.items():
            term = _umul(fp[i], gp[j], D)
            for n, t in enumerate(term):
                if not _zero(t):
                    out[n] = out[n] + c * t
        return out

    def multiplication_series(self, n: int) -> list:
        """[n](T) by double-and-add composition."""
        D = self.order
        T = [0, 1] + [0] * (D - 1)
        if n == 0:
            return [0] * (D + 1)
        result = None
        for bit in bin(n)[2:]:
            if result is not None:
                result = self.evaluate(result, result)
            if bit == "1":
                result = T[:] if result is None else self.evaluate(result, T)
        return result  # type: ignore[return-value]

    @cached_property
    def p_series(self) -> list:
        return self.multiplication_series(self.curve.field.p)


def formal_group_law(E: CurveModel, order: int | None = None) -> FormalGroupSeries:
    """The formal group law of E in the parameter z = -x/y."""
    p = E.field.p
    D = p * p + 2 if order is None else order
    if D < 2:
        raise TruncationTooSmall(f"order {D} < 2")
    key = ("law", D)
    if key in E._cache:
        return E._cache[key]
    a1, a2, a3, a4, a6 = E.a
    w = _w_series(E.a, D + 2)
    # lambda = (w(z2) - w(z1)) / (z2 - z1)
    lam: Bi = {}
    for n, A in enumerate(w):
        if _zero(A) or n < 1:
            continue
        for i in range(n):
            if n - 1 <= D:
                lam[(i, n - 1 - i)] = lam.get((i, n - 1 - i), 0) + A
    lam = {k: v for k, v in lam.items() if not _zero(v)}
    w1 = {(n, 0): c for n, c in enumerate(w) if n <= D and not _zero(c)}
    nu = _badd(w1, _bscale(_bmul(lam, {(1, 0): 1}, D), -1))
    lam2 = _bmul(lam, lam, D)
    lam3 = _bmul(lam2, lam, D)
    # substituting w = lam z + nu gives a cubic A z^3 + B z^2 + ...; z3 = -z1 - z2 - B/A
    B = _badd(
        _bscale(lam, a1),
        _bscale(lam2, a3),
        _bscale(nu, a2),
        _bscale(_bmul(lam, nu, D), 2 * a4),
        _bscale(_bmul(lam2, nu, D), 3 * a6),
    )
    A_u = _badd(_bscale(lam, a2), _bscale(lam2, a4), _bscale(lam3, a6))
    z3 = _badd({(1, 0): -1, (0, 1): -1}, _bscale(_bmul(B, _binv_unit(A_u, D), D), -1))
    w3 = _badd(_bmul(lam, z3, D), nu)
    # inverse: i(z) = -z / (1 - a1 z - a3 w(z)), evaluated at (z3, w3)
    u = _badd(_bscale(z3, -a1), _bscale(w3, -a3))
    law = _bscale(_bmul(z3, _binv_unit(u, D), D), -1)
    fg = FormalGroupSeries(E, D, law)
    E._cache[key] = fg
    return fg


# -- Newton polygon and t0 -------------------------------------------------------------------
@dataclass(frozen=True)
class NewtonSegment:
    """A slope (positive root valuation, in v_K) and its multiplicity."""

    slope: Fraction
    multiplicity: int


def lower_hull(points: Sequence[tuple[int, float]]) -> list[tuple[int, float]]:
    pts = sorted((x, y) for x, y in points if y != INF)
    hull: list[tuple[int, float]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_polygon(coeffs: Sequence[Coeff], K: PadicField) -> list[NewtonSegment]:
    """Descending segments of the polygon of sum coeffs[d] T^d."""
    hull = lower_hull([(d, coeff_valuation(c, K)) for d, c in enumerate(coeffs)])
    out = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        if y2 >= y1:
            break
        out.append(NewtonSegment(Fraction(int(y1 - y2), x2 - x1), x2 - x1))
    return out


def _good_minimal(E: CurveModel) -> CurveModel:
    cls = classify_reduction(E)
    if cls not in (GOOD_ORDINARY, GOOD_SUPERSINGULAR):
        raise NotGoodReduction(f"reduction is {cls}")
    return minimal_model(E)


def p_series_newton(E: CurveModel, order: int | None = None) -> list[NewtonSegment]:
    """Newton polygon of [p](T)/T over degrees 0 .. p^2 - 1."""
    E = _good_minimal(E)
    p = E.field.p
    D = p * p + 2 if order is None else order
    if D < p * p:
        raise TruncationTooSmall(f"order {D} < p^2 = {p * p}")
    series = formal_group_law(E, D).p_series
    return newton_polygon(series[1 : p * p + 1], E.field)


def t0_invariant(E: CurveModel) -> int:
    """Common v_K of the nonzero points of the formal p-torsion."""
    if classify_reduction(E) != GOOD_SUPERSINGULAR:
        raise NotSupersingular("t0 is defined for supersingular reduction only")
    segs = p_series_newton(E)
    if len(segs) != 1:
        raise NonIntegralTorsionValuation(f"polygon has {len(segs)} slopes")
    slope = segs[0].slope
    if slope.denominator != 1:
        raise NonIntegralTorsionValuation(
            f"torsion valuation {slope} is not integral over this field"
        )
    return int(slope)


# -- Kummer image ------------------------------------------------------------------------------
@dataclass(frozen=True)
class KummerImageDescriptor:
    reduction: str
    levels: tuple[Union[int, str], Union[int, str]]
    dimension: int
    torsion_basis: str = "formal: E[p] = mu_p + mu_p (fixed abstractly)"


def kummer_levels(K: PadicField, reduction: str, t0: int | None = None) -> tuple:
    if not K.has_integral_e0:
        raise NoMuP(f"mu_p is not contained in {K}")
    p, e0, pe0 = K.p, int(K.e0), K.pe0
    if reduction == GOOD_ORDINARY:
        return (0, pe0)
    if reduction == GOOD_SUPERSINGULAR:
        if t0 is None or not 0 < t0 < e0:
            raise NonIntegralTorsionValuation(f"need 0 < t0 < e0, got t0 = {t0}")
        return (p * (e0 - t0), p * t0)
    if reduction == SPLIT_MULTIPLICATIVE:
        return ("full", "trivial")
    if reduction == NONSPLIT_MULTIPLICATIVE:
        raise NonsplitUnsupported("nonsplit multiplicative reduction is out of scope")
    raise AdditiveRefused("additive reduction is refused")


def descriptor_dimension(K: PadicField, levels: tuple) -> int:
    return sum(subgroup_dim(K, lv) for lv in levels)


def kummer_image(E: CurveModel) -> KummerImageDescriptor:
    """Filtration levels describing the image of E(K)/p in H^1(K, E[p])."""
    K = E.field
    cls = classify_reduction(E)
    t0 = t0_invariant(E) if cls == GOOD_SUPERSINGULAR else None
    levels = kummer_levels(K, cls, t0)
    dim = descriptor_dimension(K, levels)
    if dim != K.degree + 2:
        raise AssertionError(f"Kummer image has dimension {dim}, expected {K.degree + 2}")
    return KummerImageDescriptor(cls, levels, dim)


def analyze(E: CurveModel) -> dict:
    """Summary used by the CLI and reports."""
    K = E.field
    out: dict = {"reduction": classify_reduction(E), "e0": str(K.e0), "v_disc": E.v_discriminant}
    if out["reduction"] in (GOOD_ORDINARY, GOOD_SUPERSINGULAR):
        out["polygon"] = [(str(s.slope), s.multiplicity) for s in p_series_newton(E)]
    if out["reduction"] == GOOD_SUPERSINGULAR:
        try:
            out["t0"] = t0_invariant(E)
        except NonIntegralTorsionValuation as exc:
            out["t0"] = None
            out["t0_error"] = str(exc)
    try:
        desc = kummer_image(E)
        out["image"] = list(desc.levels)
        out["image_dim"] = desc.dimension
    except (NonIntegralTorsionValuation, NonsplitUnsupported, AdditiveRefused, NoMuP) as exc:
        out["image"] = None
        out["image_error"] = f"{type(exc).__name__}: {exc}"
    return out
