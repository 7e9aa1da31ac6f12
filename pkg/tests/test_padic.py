from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import K8, Q3, Q3Z3, Q3Z9, Q9Z3
from psl.errors import EvenPrime, FieldMismatch, NotAUnit, NotEisenstein, PrecisionTooLow, ZeroValuation
from psl.padic import PadicField, det, hensel_roots, poly_eval

FIELDS = [Q3Z3, Q3Z9, Q9Z3, K8]


def elements(K):
    n = K.e * K.f
    return st.lists(st.integers(0, K.modulus - 1), min_size=n, max_size=n).map(K.element)


def units(K):
    return elements(K).filter(lambda x: x.is_unit())


@pytest.mark.parametrize("K", FIELDS, ids=lambda K: K.name)
def test_pi_satisfies_eisenstein(K):
    acc = K.zero
    for c in reversed(K.eisenstein):
        acc = acc * K.pi + K(c)
    assert acc.is_zero()


@pytest.mark.parametrize("K", FIELDS, ids=lambda K: K.name)
def test_invariants(K):
    assert K.degree == K.e * K.f
    assert K.e0 == Fraction(K.e, K.p - 1)
    assert K.pi.valuation() == 1
    assert K(K.p).valuation() == K.e
    assert (K.pi ** K.e / K(K.p)) == K.epsilon


@given(st.data())
def test_ring_axioms(data):
    K = data.draw(st.sampled_from(FIELDS))
    a, b, c = (data.draw(elements(K)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == K.zero


@given(st.data())
def test_inverse(data):
    K = data.draw(st.sampled_from(FIELDS))
    u = data.draw(units(K))
    assert u * u.inverse() == K.one
    v = data.draw(st.integers(1, 4))
    x = u * K.pi**v
    assert x.valuation() == v
    assert x / K.pi**v == u


def test_shift_round_trip():
    x = Q3Z9.one + Q3Z9.pi**5
    y = x.shift(7).shift(-7)
    assert y == x
    assert y.prec <= Q3Z9.N


def test_teichmuller_is_root_of_unity():
    F = Q9Z3.residue
    for r in F.elements():
        if not any(r):
            with pytest.raises(ZeroValuation):
                Q9Z3.teichmuller(r)
            continue
        t = Q9Z3.teichmuller(r)
        assert t ** (Q9Z3.p**Q9Z3.f - 1) == Q9Z3.one
        assert t.residue() == r


def test_hensel_roots_cube_roots_of_unity():
    # X^3 - 1 has the three roots 1, zeta, zeta^2 in Q3(zeta3)
    roots = hensel_roots([-1, 0, 0, 1], Q3Z3)
    assert len(roots) == 3
    for r in roots:
        assert poly_eval([Q3Z3(-1), Q3Z3.zero, Q3Z3.zero, Q3Z3.one], r).is_zero()


def test_det_matches_product_on_triangular():
    K = Q3Z3
    m = [[K(2), K(5)], [K.zero, K(7)]]
    assert det(m) == K(14)


def test_q3_is_unramified_default():
    assert Q3.e == 1 and Q3.pi == Q3(3)


def test_constructor_errors():
    with pytest.raises(EvenPrime):
        PadicField(2)
    with pytest.raises(NotEisenstein):
        PadicField(3, eisenstein=(9, 3, 1))
    with pytest.raises(NotEisenstein):
        PadicField(3, eisenstein=(3, 1, 1))
    with pytest.raises(PrecisionTooLow):
        PadicField(3, eisenstein=(3, 3, 1), precision=3)
    with pytest.raises(ValueError):
        PadicField(9)


def test_mixing_fields_is_refused():
    with pytest.raises(FieldMismatch):
        Q3Z3(Q9Z3.one)
    with pytest.raises(NotAUnit):
        Q3Z3.pi.inverse()


def test_json_round_trip():
    for K in FIELDS:
        assert PadicField.from_json(K.to_json()).shape == K.shape
