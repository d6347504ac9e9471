import math
from fractions import Fraction

import numpy as np
import pytest
from sympy import QQ

from src.curve_series import (
    CurveSpec,
    abel_coordinates,
    convergence_radius,
    curve_point,
    expand_at_infinity,
    sample_parameters,
)
from src.errors import ConfigurationError, ConvergenceError, DomainError, TruncationError


@pytest.fixture(scope="module")
def genus_two():
    return expand_at_infinity(CurveSpec.default(2), 18)


def test_default_curves_are_smooth():
    for g in (1, 2, 3):
        assert CurveSpec.default(g).is_smooth()
    assert not CurveSpec(genus=2).is_smooth()


def test_float_coefficients_use_decimal_spelling():
    curve = CurveSpec(genus=1, lambdas=[0.5, 0, -1])
    assert curve.lambdas == (Fraction(1, 2), Fraction(0), Fraction(-1))


def test_wrong_coefficient_count():
    with pytest.raises(ConfigurationError):
        CurveSpec(genus=2, lambdas=[1, 2, 3])


@pytest.mark.parametrize("roots", [[0, 0, 1], [-1, 2, 2, 3, 5], [1, 1, 1]])
def test_repeated_roots_are_rejected(roots):
    with pytest.raises(DomainError):
        CurveSpec.from_roots(roots)


def test_singular_coefficients_are_rejected():
    # x^3 - 3x + 2 = (x - 1)^2 (x + 2)
    with pytest.raises(DomainError):
        CurveSpec(genus=1, lambdas=[0, -3, 2])


def test_zero_coefficient_limit_is_allowed():
    curve = CurveSpec(genus=2)
    assert curve.is_degenerate_limit()
    assert not curve.is_smooth()


def test_order_too_small():
    with pytest.raises(TruncationError):
        expand_at_infinity(CurveSpec.default(2), 6)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_curve_equation_holds_to_truncation(g):
    le = expand_at_infinity(CurveSpec.default(g), 8 * g + 10)
    assert le.curve_residual().is_zero()


def test_symbolic_expansions_are_homogeneous_and_on_the_curve():
    le = expand_at_infinity(CurveSpec(genus=2, symbolic=True), 12)
    assert le.curve_residual().is_zero()
    assert le.is_homogeneous()
    assert le.is_odd()


def test_leading_terms_at_infinity(genus_two):
    assert genus_two.u_series(2).leading_term() == (1, -1)
    assert genus_two.u_series(1).leading_term() == (3, QQ(-1, 3))
    assert genus_two.is_odd()
    assert genus_two.x_of_u().leading_term() == (-2, 1)
    assert genus_two.y_of_u().leading_term() == (-5, -1)


def test_inverse_parameter(genus_two):
    t_of_u = genus_two.t_of_u
    assert t_of_u.leading_term() == (1, -1)


def test_zero_coefficients_collapse_to_monomials():
    g = 3
    le = expand_at_infinity(CurveSpec(genus=g), 20)
    for j in range(1, g + 1):
        w = 2 * (g - j) + 1
        assert list(le.u_series(j).terms()) == [(w, QQ(-1, w))]


def test_exact_and_infinite_points():
    le = expand_at_infinity(CurveSpec(genus=1), 10)
    assert abel_coordinates(le, 0) == (0,)
    assert abel_coordinates(le, Fraction(1, 2)) == (QQ(-1, 2),)
    assert abel_coordinates(le, 0j) == (0j,)


def test_involution_negates_coordinates(genus_two):
    t0 = 0.2 * convergence_radius(genus_two.curve) * np.exp(0.7j)
    plus = curve_point(genus_two, t0)
    minus = curve_point(genus_two, -t0)
    assert np.allclose(minus.u, [-c for c in plus.u])
    assert np.isclose(minus.y, -plus.y)
    assert np.isclose(plus.y**2, genus_two.curve.f(plus.x))


def test_outside_radius_is_rejected(genus_two):
    t0 = 2 * convergence_radius(genus_two.curve)
    with pytest.raises(ConvergenceError):
        abel_coordinates(genus_two, t0)


def test_radius_of_default_elliptic_curve():
    assert convergence_radius(CurveSpec.default(1)) == pytest.approx(0.3 / math.sqrt(2))
    assert math.isinf(convergence_radius(CurveSpec(genus=1)))


def test_sampled_parameters_stay_inside_radius():
    curve = CurveSpec.default(2)
    rng = np.random.default_rng(0)
    radius = convergence_radius(curve)
    ts = sample_parameters(curve, 10, rng)
    assert all(0.3 * radius - 1e-12 <= abs(t) <= radius + 1e-12 for t in ts)
