from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import K8, Q3, Q3Z3, Q3Z9, Q5Z5
from psl.elliptic import (
    ADDITIVE,
    GOOD_ORDINARY,
    GOOD_SUPERSINGULAR,
    NONSPLIT_MULTIPLICATIVE,
    SPLIT_MULTIPLICATIVE,
    CurveModel,
    NewtonSegment,
    analyze,
    classify_reduction,
    descriptor_dimension,
    formal_group_law,
    frobenius_trace,
    kummer_image,
    kummer_levels,
    newton_polygon,
    p_series_newton,
    t0_invariant,
)
from psl.errors import (
    AdditiveRefused,
    NonIntegralTorsionValuation,
    NonsplitUnsupported,
    NotGoodReduction,
    NotMinimal,
    NotSupersingular,
    SingularCurve,
    TruncationTooSmall,
)

SS = (0, 0, 0, 1, 0)       # y^2 = x^3 + x
ORD = (0, -1, 1, 0, 0)     # y^2 + y = x^3 - x^2
SPLIT = (0, 1, 0, 0, 3)    # y^2 = x^3 + x^2 + 3
NONSPLIT = (0, -1, 0, 0, 3)
ADD = (0, 0, 0, 0, 3)


def test_reduction_types():
    assert classify_reduction(CurveModel(Q3, SS)) == GOOD_SUPERSINGULAR
    assert classify_reduction(CurveModel(Q3, ORD)) == GOOD_ORDINARY
    assert classify_reduction(CurveModel(Q3, SPLIT)) == SPLIT_MULTIPLICATIVE
    assert classify_reduction(CurveModel(Q3, NONSPLIT)) == NONSPLIT_MULTIPLICATIVE
    assert classify_reduction(CurveModel(Q3, ADD)) == ADDITIVE
    assert frobenius_trace(CurveModel(Q3, SS)) % 3 == 0


def test_newton_polygons_over_q3():
    assert p_series_newton(CurveModel(Q3, SS)) == [NewtonSegment(Fraction(1, 8), 8)]
    assert p_series_newton(CurveModel(Q3, ORD)) == [NewtonSegment(Fraction(1, 2), 2)]


@pytest.mark.parametrize("K", [Q3, Q3Z3, Q3Z9, K8], ids=lambda K: K.name)
@pytest.mark.parametrize("a", [SS, ORD], ids=["supersingular", "ordinary"])
def test_slope_times_multiplicity_is_v_p(K, a):
    segs = p_series_newton(CurveModel(K, a))
    assert sum(s.slope * s.multiplicity for s in segs) == K.e


def test_t0_after_base_change():
    E = CurveModel(Q3, SS).base_change(K8)
    assert t0_invariant(E) == 1
    assert 0 < 1 < K8.e0 == 4
    desc = kummer_image(E)
    assert desc.levels == (9, 3)
    assert desc.dimension == K8.degree + 2


def test_t0_errors():
    with pytest.raises(NotSupersingular):
        t0_invariant(CurveModel(K8, ORD))
    with pytest.raises(NonIntegralTorsionValuation):
        t0_invariant(CurveModel(Q3Z3, SS))
    with pytest.raises(NotGoodReduction):
        p_series_newton(CurveModel(Q3, SPLIT))
    with pytest.raises(TruncationTooSmall):
        p_series_newton(CurveModel(Q3, SS), order=5)


@pytest.mark.parametrize("K", [Q3Z3, Q3Z9, Q5Z5, K8], ids=lambda K: K.name)
def test_descriptor_dimensions(K):
    d = K.degree + 2
    assert descriptor_dimension(K, kummer_levels(K, GOOD_ORDINARY)) == d
    assert descriptor_dimension(K, kummer_levels(K, SPLIT_MULTIPLICATIVE)) == d
    e0 = int(K.e0)
    for t0 in range(1, e0):
        assert descriptor_dimension(K, kummer_levels(K, GOOD_SUPERSINGULAR, t0)) == d
    for bad in (0, e0, None):
        with pytest.raises(NonIntegralTorsionValuation):
            kummer_levels(K, GOOD_SUPERSINGULAR, bad)
    with pytest.raises(NonsplitUnsupported):
        kummer_levels(K, NONSPLIT_MULTIPLICATIVE)
    with pytest.raises(AdditiveRefused):
        kummer_levels(K, ADDITIVE)


def _compose(fg, f, g):
    return fg.evaluate(f, g)


def test_formal_group_axioms():
    E = CurveModel(Q3, (1, -1, 1, 2, 0))  # a1, a3 nonzero exercise every term
    fg = formal_group_law(E, 8)
    D = fg.order
    T = [0, 1] + [0] * (D - 1)
    T2 = [0, 0, 1] + [0] * (D - 2)
    T3 = [0, 0, 0, 1] + [0] * (D - 3)
    zero = [0] * (D + 1)
    assert fg.evaluate(T, zero) == T
    assert all(fg.law.get((i, j), 0) == fg.law.get((j, i), 0) for i, j in fg.law)
    left = _compose(fg, _compose(fg, T, T2), T3)
    right = _compose(fg, T, _compose(fg, T2, T3))
    assert left == right
    three = fg.multiplication_series(3)
    assert three[1] == 3
    assert three == _compose(fg, fg.multiplication_series(2), T)


def test_newton_polygon_helper():
    segs = newton_polygon([9, 0, 3, 0, 1], Q3)
    assert segs == [NewtonSegment(Fraction(1, 2), 4)]


def test_model_errors_and_json():
    with pytest.raises(SingularCurve):
        CurveModel(Q3, (0, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        CurveModel(Q3, (0, 0, 0, 1))
    with pytest.raises(NotMinimal):
        classify_reduction(CurveModel(Q3, (0, 0, 0, 81, 729)))
    E = CurveModel(Q3Z3, ORD, name="ord")
    assert CurveModel.from_json(E.to_json()).a == E.a
    with pytest.raises(KeyError):
        CurveModel.from_json({"field": "nowhere", "a": list(ORD)}, {})


def test_analyze_summary():
    info = analyze(CurveModel(K8, SPLIT))
    assert info["reduction"] == SPLIT_MULTIPLICATIVE
    assert info["image"] == ["full", "trivial"] and info["image_dim"] == 10
    info = analyze(CurveModel(Q3Z3, SS))
    assert info["t0"] is None and info["image"] is None
