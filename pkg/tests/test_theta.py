import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.curve_series import CurveSpec
from src.errors import ConfigurationError, UnsupportedRangeError
from src.theta import (
    ThetaChar,
    compute_periods,
    eta_numerators,
    locate_characteristic,
    quasi_period_factor,
    real_branch_points,
    summation_points,
    theta,
    theta_jet,
)


@pytest.fixture(scope="module")
def genus_two():
    return compute_periods(CurveSpec.default(2))


def test_branch_points_are_sorted():
    roots = real_branch_points(CurveSpec.from_roots([3, 0, 1, 4, 2]))
    assert np.allclose(roots, [0, 1, 2, 3, 4])


def test_complex_branch_points_are_unsupported():
    with pytest.raises(UnsupportedRangeError):
        real_branch_points(CurveSpec(genus=1, lambdas=[0, 0, 1]))


def test_symbolic_curve_has_no_periods():
    with pytest.raises(ConfigurationError):
        real_branch_points(CurveSpec(genus=2, symbolic=True))


def test_eta_numerators_genus_one():
    (eta,) = eta_numerators(CurveSpec.from_roots([-1, 0, 1]))
    assert np.allclose(eta, [1, 0])


def test_riemann_matrix(genus_two):
    Z = genus_two.Z
    assert np.allclose(Z, Z.T, atol=1e-12)
    assert np.all(np.linalg.eigvalsh(Z.imag) > 0)
    assert genus_two.diagnostics["legendre_residual"] < 1e-8


def test_legendre_relation(genus_two):
    P = genus_two
    lhs = P.omega1.T @ P.eta2 - P.eta1.T @ P.omega2
    assert np.allclose(lhs, 2j * np.pi * P.legendre_sign * np.eye(2), atol=1e-8)


def test_lemniscatic_curve_is_square():
    P = compute_periods(CurveSpec.from_roots([-1, 0, 1]))
    assert abs(P.Z[0, 0] - 1j) < 1e-10


def test_lattice_coordinates_round_trip_generators(genus_two):
    for k, ell in enumerate(genus_two.generators.T):
        first, second = genus_two.lattice_coordinates(ell)
        expected = np.zeros(4, dtype=int)
        expected[k] = 1
        assert list(np.concatenate([first, second])) == list(expected[[0, 2, 1, 3]])


def test_theta_constant_at_i():
    assert abs(theta([0], [[1j]]) - 1.0864348112133080) < 1e-11


@pytest.mark.parametrize("g, odd", [(1, True), (2, True), (3, False), (4, False), (5, True)])
def test_standard_characteristic_parity(g, odd):
    # 4 a.b = g(g+1)/2
    assert ThetaChar.standard(g).is_odd() is odd


def test_half_characteristics():
    chars = ThetaChar.all_half(2)
    assert len(chars) == 16
    assert sum(c.is_odd() for c in chars) == 6


def test_odd_theta_vanishes_at_origin(genus_two):
    for char in ThetaChar.all_half(2):
        if char.is_odd():
            assert abs(theta(np.zeros(2), genus_two.Z, char)) < 1e-12


@settings(max_examples=10, deadline=None)
@given(
    st.lists(st.floats(-0.5, 0.5), min_size=4, max_size=4),
    st.lists(st.integers(-1, 1), min_size=4, max_size=4),
)
def test_quasi_periodicity(genus_two, coords, shifts):
    Z = genus_two.Z
    char = ThetaChar.standard(2)
    z = np.array([coords[0] + 1j * coords[1], coords[2] + 1j * coords[3]]) * 0.3
    m1, m2 = np.array(shifts[:2]), np.array(shifts[2:])
    shifted = theta(z + m1 + Z @ m2, Z, char)
    expected = quasi_period_factor(z, Z, char, m1, m2) * theta(z, Z, char)
    assert abs(shifted - expected) <= 1e-9 * max(1.0, abs(expected))


def test_gradient_matches_finite_differences(genus_two):
    Z = genus_two.Z
    char = ThetaChar(a=(0.0, 0.5), b=(0.5, 0.0))
    z = np.array([0.1 + 0.05j, -0.07 + 0.02j])
    value, grad, hess = theta_jet(z, Z, char, order=2)
    h = 1e-5
    for i in range(2):
        e = np.zeros(2)
        e[i] = h
        fd = (theta(z + e, Z, char) - theta(z - e, Z, char)) / (2 * h)
        assert abs(fd - grad[i]) <= 1e-6 * max(1.0, abs(grad[i]))
        _, gp, _ = theta_jet(z + e, Z, char, order=1)
        _, gm, _ = theta_jet(z - e, Z, char, order=1)
        assert np.allclose((gp - gm) / (2 * h), hess[i], rtol=1e-5, atol=1e-5)


def test_coarser_tolerance_still_agrees(genus_two):
    z = np.array([0.2 + 0.1j, 0.05j])
    fine = theta(z, genus_two.Z, tolerance=1e-14)
    coarse = theta(z, genus_two.Z, tolerance=1e-6)
    assert abs(fine - coarse) < 1e-6


def test_summation_needs_positive_imaginary_part():
    with pytest.raises(ConfigurationError):
        summation_points(np.array([[1.0 + 0j]]), np.zeros(1), np.zeros(1), 1e-12)


def test_derivative_order_is_bounded():
    with pytest.raises(ConfigurationError):
        theta_jet([0], [[1j]], order=3)


def test_locate_the_odd_characteristic():
    char, scores = locate_characteristic(np.array([[1j]]), [np.zeros(1)], [np.array([0.3])])
    assert char == ThetaChar.standard(1)
    assert len(scores) == 4
