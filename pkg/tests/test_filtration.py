from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from conftest import K8, MU_FIELDS, Q3, Q3Z3, Q3Z9
from psl.errors import NoMuP, NotAUnit
from psl.filtration import (
    FULL,
    HAS_UNIFORMIZER,
    TRIVIAL,
    basis_csv,
    basis_levels,
    basis_product,
    class_vector,
    dimension,
    filtration_level,
    graded_dimensions,
    kstar_basis,
    predicted_graded_dim,
    predicted_subgroup_dim,
    primitive_pth_root,
    subgroup_dim,
    unit_class,
    working_field,
)


def test_dimension_is_degree_plus_two(mu_field):
    assert dimension(mu_field) == mu_field.degree + 2
    assert basis_levels(mu_field)[0] == HAS_UNIFORMIZER
    assert basis_levels(mu_field)[-1] == mu_field.pe0


def test_graded_pieces(mu_field):
    top = mu_field.pe0 + 2
    got = graded_dimensions(mu_field, top)
    assert got == [predicted_graded_dim(mu_field, m) for m in range(top + 1)]


@pytest.mark.parametrize("K", MU_FIELDS + [K8], ids=lambda K: K.name)
def test_subgroup_dims(K):
    for m in [FULL, TRIVIAL] + list(range(K.pe0 + 3)):
        assert subgroup_dim(K, m) == predicted_subgroup_dim(K, m)


def test_basis_classes_are_unit_vectors(mu_field):
    for idx, cls in enumerate(kstar_basis(mu_field)):
        assert class_vector(cls.rep) == cls.coords
        assert cls.coords[idx] == 1


def test_zeta_is_primitive():
    W = working_field(Q3Z9)
    z = primitive_pth_root(Q3Z9)
    assert z**3 == W.one and z != W.one
    with pytest.raises(NoMuP):
        primitive_pth_root(Q3)


@given(st.data())
def test_class_vector_is_a_homomorphism(data):
    K = data.draw(st.sampled_from([Q3Z3, Q3Z9]))
    W = working_field(K)
    d = dimension(K)
    u = data.draw(st.lists(st.integers(0, 2), min_size=d, max_size=d))
    v = data.draw(st.lists(st.integers(0, 2), min_size=d, max_size=d))
    x, y = basis_product(K, u), basis_product(K, v)
    assert class_vector(x * y) == tuple((a + b) % 3 for a, b in zip(u, v))
    assert not any(class_vector(x**3))
    assert class_vector(W(x)) == tuple(u)


@given(st.integers(1, 12), st.integers(1, 26))
def test_level_of_one_plus_pi_power(i, c):
    W = working_field(Q3Z9)
    x = W.one + W(c) * W.pi**i
    lv = filtration_level(x)
    if c % 3 == 0:
        return
    if i > W.pe0:
        assert lv == TRIVIAL
    elif i % 3 and i < W.pe0:
        assert lv == i
    else:
        assert lv == TRIVIAL or lv >= i


def test_filtration_level_of_non_unit():
    with pytest.raises(NotAUnit):
        filtration_level(Q3Z3.pi)
    assert unit_class(working_field(Q3Z3).pi).level == HAS_UNIFORMIZER


def test_basis_csv_shape():
    lines = basis_csv(K8).strip().splitlines()
    assert lines[0] == "level,representative,coordinates"
    assert len(lines) == dimension(K8) + 1
