"""Representation engine checks: actions, relations, volume, dense oracle."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinorlab.clifford import (
    G1,
    G2,
    Spinor,
    apply_generator,
    apply_vector,
    basis_spinor,
    chirality_project,
    dense_generator_matrix,
    eps_to_index,
    index_to_eps,
    inner,
    make_space,
    standard_generator_matrix,
    volume_element,
    zero_spinor,
)
from spinorlab.errors import (
    DimensionError,
    ParityError,
    RangeError,
    SpinorlabError,
)


def _random_unit(space, rng):
    c = rng.standard_normal(space.dim) + 1j * rng.standard_normal(space.dim)
    return Spinor(space, c / np.linalg.norm(c))


def test_make_space_examples():
    assert (make_space(6).k, make_space(6).dim) == (3, 8)
    assert (make_space(2).k, make_space(2).dim) == (1, 2)
    assert (make_space(7).k, make_space(7).dim) == (3, 8)
    assert make_space(7).odd and not make_space(6).odd


def test_make_space_rejects_small_dimensions():
    for n in (1, 0, -3):
        with pytest.raises(DimensionError):
            make_space(n)


def test_index_convention_examples():
    assert eps_to_index((1, 1, 1)) == 0
    assert eps_to_index((-1, -1, -1)) == 7
    assert eps_to_index((1, -1)) == 1
    assert index_to_eps(1, 2) == (1, -1)


def test_index_convention_rejects_bad_input():
    with pytest.raises(RangeError):
        eps_to_index((1, 0, -1))
    with pytest.raises(RangeError):
        index_to_eps(4, 2)
    with pytest.raises(RangeError):
        index_to_eps(-1, 3)


@given(st.integers(min_value=1, max_value=7), st.data())
def test_index_bijection_round_trip(k, data):
    i = data.draw(st.integers(min_value=0, max_value=(1 << k) - 1))
    eps = index_to_eps(i, k)
    assert len(eps) == k
    assert eps_to_index(eps) == i


def test_generator_action_examples():
    sp2 = make_space(2)
    out = apply_generator(sp2, 1, basis_spinor(sp2, 0))
    np.testing.assert_allclose(out.coeffs, [0.0, 1j], atol=0)
    sp3 = make_space(3)
    out3 = apply_generator(sp3, 3, basis_spinor(sp3, 0))
    np.testing.assert_allclose(out3.coeffs, [-1j, 0.0], atol=0)


def test_generator_squares_to_minus_one():
    rng = np.random.default_rng(0)
    for n in range(2, 11):
        space = make_space(n)
        psi = _random_unit(space, rng)
        for j in range(1, n + 1):
            twice = apply_generator(space, j, apply_generator(space, j, psi))
            np.testing.assert_allclose(twice.coeffs, -psi.coeffs, atol=1e-14)


def test_generator_index_range_checked():
    space = make_space(5)
    psi = basis_spinor(space, 0)
    for j in (0, 6, -1):
        with pytest.raises(RangeError):
            apply_generator(space, j, psi)


@given(
    st.integers(min_value=2, max_value=10),
    st.integers(min_value=0, max_value=2**31),
)
def test_anticommutation_relation(n, seed):
    rng = np.random.default_rng(seed)
    space = make_space(n)
    psi = _random_unit(space, rng)
    j = int(rng.integers(1, n + 1))
    l = int(rng.integers(1, n + 1))
    lhs = apply_generator(space, j, apply_generator(space, l, psi)) + apply_generator(
        space, l, apply_generator(space, j, psi)
    )
    if j == l:
        lhs = lhs + 2.0 * psi
    assert lhs.norm() <= 1e-12


def test_generator_action_is_isometric():
    rng = np.random.default_rng(1)
    for n in range(2, 11):
        space = make_space(n)
        psi = _random_unit(space, rng)
        for j in range(1, n + 1):
            assert abs(apply_generator(space, j, psi).norm() - 1.0) <= 1e-13


def test_apply_vector_zero_and_quadratic_relation():
    rng = np.random.default_rng(2)
    for n in (3, 4, 6):
        space = make_space(n)
        psi = _random_unit(space, rng)
        assert apply_vector(space, np.zeros(n), psi).norm() == 0.0
        v = rng.standard_normal(n)
        twice = apply_vector(space, v, apply_vector(space, v, psi))
        np.testing.assert_allclose(
            twice.coeffs, -(np.linalg.norm(v) ** 2) * psi.coeffs, atol=1e-12
        )


def test_vacuum_isotropic_direction_in_dim_4():
    # the all-plus spinor is annihilated by e_1 - i e_2 in this representation
    space = make_space(4)
    psi1 = basis_spinor(space, 0)
    assert apply_vector(space, [1.0, -1j, 0.0, 0.0], psi1).norm() == 0.0
    assert apply_vector(space, [0.0, 0.0, 1.0, -1j], psi1).norm() == 0.0


def test_inner_product_convention():
    space = make_space(6)
    for i in range(space.dim):
        for l in range(space.dim):
            val = inner(basis_spinor(space, i), basis_spinor(space, l))
            assert val == (1.0 if i == l else 0.0)
    psi2 = basis_spinor(space, 0) + basis_spinor(space, space.dim - 1)
    assert inner(psi2, psi2) == pytest.approx(2.0)
    # linear in the first slot, conjugate-linear in the second
    rng = np.random.default_rng(3)
    phi, psi = _random_unit(space, rng), _random_unit(space, rng)
    assert inner(2j * phi, psi) == pytest.approx(2j * inner(phi, psi))
    assert inner(phi, 2j * psi) == pytest.approx(-2j * inner(phi, psi))


def test_clifford_multiplication_skew_adjoint():
    rng = np.random.default_rng(4)
    for n in range(2, 7):
        space = make_space(n)
        phi, psi = _random_unit(space, rng), _random_unit(space, rng)
        v = rng.standard_normal(n)
        s = inner(apply_vector(space, v, phi), psi) + inner(
            phi, apply_vector(space, v, psi)
        )
        assert abs(s) <= 1e-12 * (1 + np.linalg.norm(v))


def test_volume_element_is_identity_for_odd_n():
    rng = np.random.default_rng(5)
    for n in (3, 5, 7):
        space = make_space(n)
        psi = _random_unit(space, rng)
        np.testing.assert_allclose(
            volume_element(space, psi).coeffs, psi.coeffs, atol=1e-14
        )


def test_volume_element_is_involutive_for_even_n():
    rng = np.random.default_rng(6)
    for n in (2, 4, 6, 8):
        space = make_space(n)
        psi = _random_unit(space, rng)
        om2 = volume_element(space, volume_element(space, psi))
        np.testing.assert_allclose(om2.coeffs, psi.coeffs, atol=1e-14)


def test_volume_element_sign_on_all_plus_spinor():
    space = make_space(4)
    out = volume_element(space, basis_spinor(space, 0))
    np.testing.assert_allclose(out.coeffs, basis_spinor(space, 0).coeffs, atol=0)


def test_volume_element_commutation_pattern():
    # commutes with every generator for odd n, anticommutes for even n
    rng = np.random.default_rng(7)
    for n in (3, 4, 5, 6):
        space = make_space(n)
        sign = 1.0 if n % 2 else -1.0
        psi = _random_unit(space, rng)
        for j in range(1, n + 1):
            a = volume_element(space, apply_generator(space, j, psi))
            b = apply_generator(space, j, volume_element(space, psi))
            np.testing.assert_allclose(a.coeffs, sign * b.coeffs, atol=1e-13)


def test_chirality_projectors():
    rng = np.random.default_rng(8)
    for n in (2, 4, 6):
        space = make_space(n)
        psi = _random_unit(space, rng)
        plus = chirality_project(space, psi, 1)
        minus = chirality_project(space, psi, -1)
        np.testing.assert_allclose(plus.coeffs + minus.coeffs, psi.coeffs, atol=1e-14)
        again = chirality_project(space, plus, 1)
        np.testing.assert_allclose(again.coeffs, plus.coeffs, atol=1e-14)
        cross = chirality_project(space, plus, -1)
        assert cross.norm() <= 1e-14
        assert abs(inner(plus, minus)) <= 1e-14


def test_chirality_projection_of_all_plus_spinor_in_dim_4():
    space = make_space(4)
    psi1 = basis_spinor(space, 0)
    kept = chirality_project(space, psi1, 1)
    np.testing.assert_allclose(kept.coeffs, psi1.coeffs, atol=0)
    assert chirality_project(space, psi1, -1).norm() == 0.0


def test_chirality_needs_even_dimension():
    space = make_space(5)
    with pytest.raises(ParityError):
        chirality_project(space, basis_spinor(space, 0), 1)
    with pytest.raises(RangeError):
        chirality_project(make_space(4), basis_spinor(make_space(4), 0), 2)


def test_standard_matrices_in_dim_2():
    space = make_space(2)
    np.testing.assert_allclose(standard_generator_matrix(space, 1).matrix, G1, atol=0)
    np.testing.assert_allclose(standard_generator_matrix(space, 2).matrix, G2, atol=0)


def test_generator_matrices_unitary_and_square_to_minus_id():
    for n in (3, 5, 6):
        space = make_space(n)
        eye = np.eye(space.dim)
        for j in range(1, n + 1):
            for mat in (
                standard_generator_matrix(space, j).matrix,
                dense_generator_matrix(space, j).matrix,
            ):
                np.testing.assert_allclose(mat.conj().T @ mat, eye, atol=1e-14)
                np.testing.assert_allclose(mat @ mat, -eye, atol=1e-14)


def test_dense_oracle_matches_matrix_free_action():
    rng = np.random.default_rng(9)
    for n in range(2, 11):
        space = make_space(n)
        mats = [dense_generator_matrix(space, j).matrix for j in range(1, n + 1)]
        for _ in range(100):
            psi = _random_unit(space, rng)
            for j in range(1, n + 1):
                free = apply_generator(space, j, psi).coeffs
                dense = mats[j - 1] @ psi.coeffs
                assert np.linalg.norm(free - dense) <= 1e-13


def test_spinor_validation():
    space = make_space(4)
    with pytest.raises(DimensionError):
        Spinor(space, np.zeros(3, dtype=complex))
    with pytest.raises(SpinorlabError):
        Spinor(space, [np.nan, 0.0, 0.0, 0.0])
    with pytest.raises(DimensionError):
        apply_generator(space, 1, basis_spinor(make_space(6), 0))


def test_zero_spinor_helper():
    space = make_space(6)
    assert zero_spinor(space).norm() == 0.0
