from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import QQ

from src.errors import DimensionError, DomainError, TruncationError
from src.exact_arith import (
    SatoGrading,
    TruncSeries,
    check_sato_homogeneous,
    det_cofactor,
    det_fraction_free,
    exact,
    lowest_degree_part,
    substitute,
    variable_table,
)


def square_matrices(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-5, 5), min_size=n, max_size=n),
            min_size=n,
            max_size=n,
        )
    )


def test_exact_conversions():
    assert exact(0.5) == QQ(1, 2)
    assert exact("3/4") == QQ(3, 4)
    assert exact(Fraction(-2, 6)) == QQ(-1, 3)
    assert exact(7) == QQ(7)


@pytest.mark.parametrize("bad", [True, "abc", object()])
def test_exact_rejects_non_rationals(bad):
    with pytest.raises(DomainError):
        exact(bad)


def test_identity_and_transposition_determinants():
    identity = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert det_fraction_free(identity) == 1
    assert det_fraction_free([[0, 1], [1, 0]]) == -1
    assert det_fraction_free([]) == 1


def test_symbolic_hankel_determinant():
    R, (u1, u2, u3) = variable_table(["u1", "u2", "u3"])
    assert det_fraction_free([[u1, u2], [u2, u3]]) == u1 * u3 - u2**2


def test_pivoting_on_zero_leading_entry():
    M = [[0, 2, 1], [3, 0, 1], [1, 1, 0]]
    assert det_fraction_free(M) == det_cofactor(M) == 5


def test_non_square_matrix_is_rejected():
    with pytest.raises(DimensionError):
        det_fraction_free([[1, 2, 3], [4, 5, 6]])


@settings(max_examples=60, deadline=None)
@given(square_matrices())
def test_bareiss_matches_cofactor_expansion(M):
    assert det_fraction_free(M) == det_cofactor(M)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=27, max_size=27))
def test_bareiss_matches_cofactor_for_polynomials(cs):
    R, (a, b) = variable_table(["a", "b"])
    entries = [cs[3 * k] + cs[3 * k + 1] * a + cs[3 * k + 2] * b for k in range(9)]
    M = [entries[0:3], entries[3:6], entries[6:9]]
    assert R(det_fraction_free(M)) == R(det_cofactor(M))


def test_lowest_degree_part():
    R, (u1, u2) = variable_table(["u1", "u2"])
    assert lowest_degree_part(u1 - u2**3 * QQ(1, 3)) == u1


def test_substitute_checks_arity():
    R, (a, b) = variable_table(["a", "b"])
    assert substitute(a * b + 1, [2, 3]) == 7
    with pytest.raises(DimensionError):
        substitute(a + b, [1])


def test_reciprocal_of_one_minus_t():
    s = TruncSeries((1, -1), 6).reciprocal()
    assert [s.coefficient(k) for k in range(6)] == [1] * 6


def test_reciprocal_of_t_is_laurent():
    s = TruncSeries.monomial(1, 5).reciprocal()
    assert s.valuation == -1
    assert s.coefficient(-1) == 1


def test_square_root_of_one_plus_two_t():
    a = TruncSeries((1, 2), 4)
    r = a.sqrt()
    assert [r.coefficient(k) for k in range(4)] == [1, 1, QQ(-1, 2), QQ(1, 2)]
    assert r * r == a


def test_square_root_needs_unit_constant():
    with pytest.raises(DomainError):
        TruncSeries((2, 1), 4).sqrt()


def test_reversion_composes_to_identity():
    a = TruncSeries((0, 1, 1), 7)
    b = a.reversion()
    c = a.compose(b)
    assert c.coefficient(1) == 1
    assert all(c.coefficient(k) == 0 for k in range(2, 7))


def test_coefficient_beyond_truncation():
    with pytest.raises(TruncationError):
        TruncSeries((1, 2), 3).coefficient(3)


def test_series_in_different_variables_do_not_mix():
    with pytest.raises(DomainError):
        TruncSeries((1,), 3, var="t") + TruncSeries((1,), 3, var="s")


def test_integrating_a_residue_fails():
    with pytest.raises(DomainError):
        TruncSeries((1,), 3, valuation=-1).integrate()


def test_exact_and_numeric_evaluation_agree():
    s = TruncSeries((1, 1, 1), 3)
    assert s.evaluate(Fraction(1, 2)) == QQ(7, 4)
    assert abs(s.evaluate(0.5 + 0j) - 1.75) < 1e-12


def test_sato_weights_for_genus_two():
    grading = SatoGrading.for_genus(2)
    assert grading.weight("x") == -2
    assert grading.weight("y") == -5
    assert grading.weight("u1") == 3
    R, (u1, u2) = variable_table(["u1", "u2"])
    assert check_sato_homogeneous(u1 - u2**3 * QQ(1, 3), 3, grading)
    assert not check_sato_homogeneous(u1 + u2, 3, grading)


def test_sato_weight_of_series_terms():
    grading = SatoGrading.for_genus(1)
    # x = t^-2 has weight -2 with t of weight 1
    x = TruncSeries.monomial(-2, 4, coeff=1)
    assert check_sato_homogeneous(x, -2, grading)
