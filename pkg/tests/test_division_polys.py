from fractions import Fraction

import numpy as np
import pytest
from sympy import QQ

from src.curve_series import CurveSpec, expand_at_infinity
from src.division_polys import (
    CurveFunction,
    cantor_numerators,
    cantor_psi,
    cantor_window,
    check_psi_homogeneous,
    curve_ring,
    ddu,
    ddx,
    derivative_table,
    elliptic_multiply,
    elliptic_psi,
    expected_pole_order,
    kiepert_det,
    kiepert_raw,
    pole_order_at_infinity,
    psi_series_leading,
    torsion_scan,
)
from src.errors import DomainError, UndefinedError, UnsupportedRangeError
from src.exact_arith import TruncSeries

SHORT_WEIERSTRASS = CurveSpec(genus=1, lambdas=[0, -2, 3])


def random_curve(g: int, seed: int, elliptic: bool = False) -> CurveSpec:
    rng = np.random.default_rng(seed)
    while True:
        lambdas = [Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 4))) for _ in range(2 * g + 1)]
        if elliptic:
            lambdas[0] = Fraction(0)
        try:
            return CurveSpec(genus=g, lambdas=lambdas)
        except DomainError:
            continue


def assert_series_equal(a: TruncSeries, b: TruncSeries):
    low = min(a.valuation, b.valuation)
    high = min(a.order, b.order)
    assert high > low
    for e in range(low, high):
        assert a.coefficient(e) == b.coefficient(e), e


def test_ddx_basics():
    curve = CurveSpec.default(2)
    _, _, f, df = curve_ring(curve)
    x, y = CurveFunction.x(curve), CurveFunction.y(curve)
    assert ddx(x) == 1
    assert ddx(CurveFunction.constant(curve, 5)).is_zero()
    assert ddx(y) == CurveFunction.make(curve, b=df * QQ(1, 2), fpow=1)


def test_second_derivative_matches_series_route():
    curve = CurveSpec.default(1)
    le = expand_at_infinity(curve, 24)
    first = ddx(CurveFunction.y(curve))
    second = ddx(first)
    # d/dx = -(t^3 / 2) d/dt when x = t^-2
    by_series = first.series(le).differentiate() * TruncSeries.monomial(
        3, 24, coeff=QQ(-1, 2)
    )
    assert_series_equal(second.series(le), by_series)


def test_ddu_along_the_curve():
    curve = CurveSpec.default(2)
    x, y = CurveFunction.x(curve), CurveFunction.y(curve)
    assert ddu(x, 1) == y.scale(2)
    assert ddu(x, 2) == CurveFunction.make(curve, b=2, xpow=1)
    assert ddu(CurveFunction.constant(curve, 3), 1).is_zero()
    with pytest.raises(DomainError):
        ddu(x, 3)


def test_psi_two_for_elliptic_curves():
    y = CurveFunction.y(SHORT_WEIERSTRASS)
    assert kiepert_raw(SHORT_WEIERSTRASS, 2) == y.scale(2)
    assert kiepert_det(SHORT_WEIERSTRASS, 2) == y.scale(-2)


def test_psi_three_is_the_classical_quartic():
    curve = SHORT_WEIERSTRASS
    a, b = QQ(-2), QQ(3)
    x = CurveFunction.x(curve)
    quartic = (x**4).scale(3) + (x**2).scale(6 * a) + x.scale(12 * b) - a * a
    assert kiepert_det(curve, 3) == quartic
    assert elliptic_psi(curve, 3) == quartic


@pytest.mark.parametrize("n", range(2, 7))
def test_kiepert_matches_elliptic_recursion(n):
    sign = 1 if n % 2 else -1
    assert kiepert_det(SHORT_WEIERSTRASS, n) == elliptic_psi(SHORT_WEIERSTRASS, n).scale(sign)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_vandermonde_collapse_for_small_n(n):
    curve = CurveSpec.default(3)
    two_y = CurveFunction.make(curve, b=2) ** (n * (n - 1) // 2)
    psi = kiepert_det(curve, n)
    assert psi == two_y or psi == -two_y


@pytest.mark.parametrize("n", [3, 4])
def test_other_derivative_directions_agree(n):
    curve = CurveSpec.default(2)
    assert kiepert_raw(curve, n, 2) == kiepert_raw(curve, n, 1)


def test_cantor_window_sizes():
    assert cantor_window(2, 5) == (3, 1, 4)
    assert cantor_window(2, 6) == (3, 2, 3)
    assert cantor_window(1, 4) == (2, 1, 3)
    with pytest.raises(UnsupportedRangeError):
        cantor_psi(CurveSpec.default(3), 2)


def test_cantor_matches_kiepert_for_symbolic_elliptic_curve():
    curve = CurveSpec(genus=1, symbolic=True)
    assert cantor_psi(curve, 4) == kiepert_det(curve, 4)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_cantor_matches_kiepert_for_symbolic_genus_two(n):
    curve = CurveSpec(genus=2, symbolic=True)
    assert cantor_psi(curve, n) == kiepert_det(curve, n)


def test_cantor_matches_kiepert_for_genus_two_six():
    curve = CurveSpec.default(2)
    assert cantor_psi(curve, 6) == kiepert_det(curve, 6)


@pytest.mark.parametrize("g, n, expected", [(2, 3, 15), (3, 2, 7), (1, 2, 3), (2, 4, 29)])
def test_pole_orders(g, n, expected):
    psi = kiepert_det(CurveSpec.default(g), n)
    assert pole_order_at_infinity(psi) == expected == expected_pole_order(g, n)


def test_zero_function_has_no_pole_order():
    with pytest.raises(UndefinedError):
        pole_order_at_infinity(CurveFunction.constant(CurveSpec.default(1), 0))


def test_symbolic_psi_is_sato_homogeneous():
    psi = kiepert_det(CurveSpec(genus=2, symbolic=True), 3)
    assert check_psi_homogeneous(psi)


def test_series_leading_power_is_the_pole_order():
    curve = CurveSpec.default(2)
    psi = kiepert_det(curve, 3)
    exponent, coeff = psi_series_leading(psi, expand_at_infinity(curve, 30))
    assert exponent == -15
    assert coeff != 0


@pytest.mark.parametrize("g, top", [(1, 5), (2, 3)])
def test_triangular_change_of_derivatives(g, top):
    curve = CurveSpec.default(g)
    table = derivative_table(curve, top)
    x, y = CurveFunction.x(curve), CurveFunction.y(curve)
    for F in (x, y, x * x * y):
        for m in range(1, top + 1):
            assert table.triangular_check(F, m)


def test_derivatives_of_y_follow_the_numerator_recursion():
    curve = CurveSpec.default(2)
    table = derivative_table(curve, 4)
    P = cantor_numerators(curve, 4)
    for k in range(5):
        assert table.y_derivs[k] == CurveFunction.make(curve, b=P[k], fpow=k)


def test_six_torsion_point():
    curve = CurveSpec(genus=1, lambdas=[0, 0, 1])
    report = torsion_scan(curve, (2, 3), 6)
    assert report.torsion
    assert report.vanishing == [6]
    assert elliptic_multiply(curve, (Fraction(2), Fraction(3)), 6) is None


def test_non_torsion_point():
    curve = CurveSpec(genus=1, lambdas=[0, 0, -2])
    report = torsion_scan(curve, (3, 5), 5)
    assert not report.torsion
    assert elliptic_multiply(curve, (Fraction(3), Fraction(5)), 5) is not None


def test_branch_point_is_two_torsion():
    curve = CurveSpec(genus=1, lambdas=[0, 0, 1])
    report = torsion_scan(curve, (-1, 0), 2)
    assert report.torsion
    assert report.values[2] == "0"


def test_point_off_the_curve():
    with pytest.raises(DomainError):
        torsion_scan(CurveSpec(genus=1, lambdas=[0, 0, 1]), (1, 1), 3)


def test_json_form_of_psi_two():
    y = CurveFunction.y(SHORT_WEIERSTRASS)
    assert y.scale(2).to_json() == {"a": [], "b": ["2"], "x_power": 0, "f_power": 0}


@pytest.mark.parametrize(
    "g, n",
    [(1, 3), (1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6), (3, 5), (3, 6), (3, 7)],
)
def test_cantor_matches_kiepert_for_random_coefficients(g, n):
    curve = random_curve(g, seed=100 * g + n)
    psi = kiepert_det(curve, n)
    assert cantor_psi(curve, n) == psi
    assert pole_order_at_infinity(psi) == expected_pole_order(g, n)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("n", [2, 3, 4])
def test_elliptic_recursion_for_random_coefficients(seed, n):
    curve = random_curve(1, seed, elliptic=True)
    sign = 1 if n % 2 else -1
    assert kiepert_det(curve, n) == elliptic_psi(curve, n).scale(sign)


@pytest.mark.parametrize("k, n", [(1, 3), (2, 4), (3, 5), (4, 6), (5, 7)])
def test_multiples_of_a_generator_are_not_torsion(k, n):
    # (3, 5) generates the rational points of y^2 = x^3 - 2
    curve = CurveSpec(genus=1, lambdas=[0, 0, -2])
    point = elliptic_multiply(curve, (Fraction(3), Fraction(5)), k)
    report = torsion_scan(curve, point, n)
    assert not report.torsion
    assert elliptic_multiply(curve, point, n) is not None


def test_torsion_points_of_the_mordell_curve():
    curve = CurveSpec(genus=1, lambdas=[0, 0, 1])
    for point, order in [((0, 1), 3), ((0, -1), 3), ((2, -3), 6), ((-1, 0), 2)]:
        assert torsion_scan(curve, point, order).torsion
        assert elliptic_multiply(curve, tuple(Fraction(v) for v in point), order) is None
