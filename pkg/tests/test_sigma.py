from dataclasses import replace

import numpy as np
import pytest

from src.curve_series import CurveSpec, curve_point, expand_at_infinity
from src.errors import (
    ConditioningError,
    ConvergenceError,
    DomainError,
    StateError,
    UnsupportedRangeError,
)
from src.sigma import (
    brill_noether_rank,
    confluent_limit,
    evaluator_for,
    expected_rank,
    lattice_check,
    linear_system_dimension,
    natural_indices,
    parity_residual,
    parity_sign,
    pfaffian,
    richardson,
    schur_limit,
    sigma,
    sigma_deriv,
    sigma_natural,
    stratum_point,
    translation_residual,
    vanishing_profile,
    vanishing_sets,
)


@pytest.fixture(scope="module")
def genus_one():
    return evaluator_for(CurveSpec.default(1))


@pytest.fixture(scope="module")
def genus_two():
    return evaluator_for(CurveSpec.default(2))


@pytest.fixture(scope="module")
def expansions_two():
    return expand_at_infinity(CurveSpec.default(2), 18)


@pytest.fixture(scope="module")
def genus_three():
    return evaluator_for(CurveSpec.default(3))


U2 = np.array([0.11 + 0.04j, -0.06 + 0.09j])


def test_richardson_removes_even_powers():
    values = [1 + h**2 + h**4 for h in (0.1 / 2**k for k in range(4))]
    ext = richardson(values)
    assert abs(ext.value - 1) < 1e-12
    assert abs(ext.order - 2) < 0.1


def test_richardson_needs_three_levels():
    with pytest.raises(ConvergenceError):
        richardson([1.0, 1.0])


def test_pfaffian_of_standard_forms():
    J = np.array([[0, 1], [-1, 0]])
    assert pfaffian(J) == 1
    K = np.zeros((4, 4))
    K[0, 1], K[2, 3] = 1, 1
    assert pfaffian(K - K.T) == 1
    assert pfaffian(np.zeros((3, 3))) == 0


@pytest.mark.parametrize("g, sign", [(1, -1), (2, -1), (3, 1), (4, 1), (5, -1)])
def test_parity_sign(g, sign):
    assert parity_sign(g) == sign


def test_elliptic_sigma_starts_with_u(genus_one):
    u = np.array([1e-3 + 5e-4j])
    assert abs(sigma(genus_one, u) / u[0] - 1) < 1e-5


@pytest.mark.parametrize("fixture", ["genus_one", "genus_two"])
def test_sigma_vanishes_at_origin(fixture, request):
    ev = request.getfixturevalue(fixture)
    assert abs(sigma(ev, np.zeros(ev.genus))) < 1e-12


def test_normalization_diagnostics(genus_two):
    assert genus_two.normalized
    assert genus_two.diagnostics["sharp_residual"] < 1e-4
    assert genus_two.diagnostics["kappa"] in (1, -1)


def test_unnormalized_evaluator_refuses_sigma(genus_two):
    raw = replace(genus_two, constant=None)
    with pytest.raises(StateError):
        sigma(raw, U2)


def test_derivative_index_checks(genus_two):
    with pytest.raises(DomainError):
        sigma_deriv(genus_two, U2, (3,))
    with pytest.raises(UnsupportedRangeError):
        sigma_deriv(genus_two, U2, (1, 1, 2))


def test_derivatives_match_finite_differences(genus_two):
    h = 1e-5
    for i in (1, 2):
        e = np.zeros(2)
        e[i - 1] = h
        fd = (sigma(genus_two, U2 + e) - sigma(genus_two, U2 - e)) / (2 * h)
        exact = sigma_deriv(genus_two, U2, (i,))
        assert abs(fd - exact) <= 1e-6 * max(1.0, abs(exact))
        fd2 = (sigma_deriv(genus_two, U2 + e, (2,)) - sigma_deriv(genus_two, U2 - e, (2,))) / (2 * h)
        assert abs(fd2 - sigma_deriv(genus_two, U2, (i, 2))) <= 1e-5


def test_parity(genus_two, genus_one):
    assert parity_residual(genus_two, U2) < 1e-9
    assert parity_residual(genus_one, np.array([0.2 - 0.1j])) < 1e-9


def test_translational_formula(genus_two):
    for ell in genus_two.periods.generators.T:
        assert translation_residual(genus_two, U2, ell) < 1e-9


def test_riemann_form_is_unimodular(genus_two):
    check = lattice_check(genus_two, U2)
    assert check.integrality < 1e-9
    assert abs(check.pfaffian) == 1
    assert max(check.translation) < 1e-9


def test_sigma_vanishes_on_the_curve_image(genus_two, expansions_two):
    point = curve_point(expansions_two, 0.12 + 0.05j)
    assert abs(sigma(genus_two, point.u)) < 1e-8 * abs(sigma_deriv(genus_two, point.u, (2,)))


def test_vanishing_sets():
    assert vanishing_sets(2, 1) == [()]
    assert set(vanishing_sets(3, 0)) >= {(), (1,), (2,), (3,)}
    assert () in vanishing_sets(3, 2)


def test_vanishing_profile_on_genus_two_curve(genus_two, expansions_two):
    u = stratum_point(expansions_two, [0.1 - 0.07j])
    profile = vanishing_profile(genus_two, u, 1)
    assert max(profile.vanishing.values()) < 1e-8
    assert min(profile.nonvanishing.values()) > 1e3 * max(profile.vanishing.values())
    assert min(profile.nonvanishing.values()) > 1e-6


@pytest.mark.parametrize("g, n, rank", [(2, 0, 1), (2, 1, 2), (3, 0, 2), (3, 1, 2), (3, 2, 3)])
def test_expected_rank(g, n, rank):
    assert expected_rank(g, n) == rank


def _t_of_x(x):
    return complex(1 / np.sqrt(complex(x)))


@pytest.mark.parametrize("g, xs", [(2, []), (2, [1.5 + 0.7j]), (3, []), (3, [0.9 - 0.4j]), (3, [0.7 + 0.5j, -1.2 + 0.3j])])
def test_brill_noether_rank(g, xs):
    curve = CurveSpec.default(g)
    n = len(xs)
    assert brill_noether_rank(curve, [_t_of_x(x) for x in xs], n) == expected_rank(g, n)
    assert linear_system_dimension(curve, [_t_of_x(x) for x in xs], n) == g + 1 - expected_rank(g, n)


def test_brill_noether_rejects_coincident_points():
    t = _t_of_x(0.7 + 0.5j)
    with pytest.raises(ConditioningError):
        brill_noether_rank(CurveSpec.default(3), [t, t], 2)


def test_brill_noether_point_count():
    with pytest.raises(DomainError):
        brill_noether_rank(CurveSpec.default(2), [0.3], 2)


@pytest.mark.parametrize("fixture", ["genus_one", "genus_two"])
def test_schur_limit(fixture, request):
    ev = request.getfixturevalue(fixture)
    rng = np.random.default_rng(3)
    u = rng.uniform(0.5, 1.0, size=ev.genus) * np.exp(1j * rng.uniform(0, 2 * np.pi, size=ev.genus))
    result = schur_limit(ev, u)
    assert result.discrepancy < 1e-6
    assert abs(result.order - 2) < 0.3


def test_confluent_limit(genus_two, expansions_two):
    ext, target = confluent_limit(genus_two, expansions_two, 0.1 + 0.06j, j=2)
    assert abs(ext.value - target) < 1e-6 * abs(target)


def test_flat_derivative_at_doubled_point_is_nonzero(genus_two, expansions_two):
    point = curve_point(expansions_two, 0.09 + 0.02j)
    assert abs(sigma_natural(genus_two, 2 * np.asarray(point.u), 2)) > 0


@pytest.mark.parametrize("fixture, t", [("genus_two", 0.1 - 0.05j), ("genus_three", 0.08 + 0.06j)])
def test_sharp_derivative_is_quasi_periodic_on_the_curve_image(fixture, t, request):
    ev = request.getfixturevalue(fixture)
    le = expand_at_infinity(ev.curve, 8 * ev.genus + 10)
    u = curve_point(le, t).u
    sharp = natural_indices(ev.genus, 1)
    for ell in ev.periods.generators.T:
        assert translation_residual(ev, u, ell, sharp) < 1e-6
