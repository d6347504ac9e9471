import json

import pytest

from src.constants import (
    cantor_sign,
    confluent_constant,
    derive_doubling_constant,
    derive_fs_constant,
    derive_kiepert_constant,
    derive_small_psi_sign,
    fixture_value,
    load_sign_fixtures,
    published_fs_constant,
    published_kiepert_constant,
    published_small_psi_sign,
    sharp_leading_sign,
    sign_table,
)
from src.errors import DomainError
from src.schur import schur_sign


@pytest.fixture(scope="module")
def pinned(tmp_path_factory):
    path = tmp_path_factory.mktemp("fixtures") / "sign_constants.json"
    return load_sign_fixtures(str(path))


@pytest.mark.parametrize("g, eps, kappa", [(1, -1, 1), (2, 1, -1), (3, 1, -1)])
def test_schur_and_sharp_signs(g, eps, kappa):
    assert schur_sign(g) == eps
    assert sharp_leading_sign(g) == kappa


@pytest.mark.parametrize("g", [1, 2, 3])
def test_two_point_constant(g):
    assert derive_fs_constant(g, 2) == (-1) ** (g + 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_elliptic_fs_constants(n):
    assert derive_fs_constant(1, n) == (-1) ** ((n - 1) * (n - 2) // 2)
    assert derive_fs_constant(1, n) == published_fs_constant(1, n)


@pytest.mark.parametrize("n", range(2, 7))
def test_elliptic_kiepert_constants(n):
    assert derive_kiepert_constant(1, n) == (-1) ** (n - 1)
    assert derive_kiepert_constant(1, n) == published_kiepert_constant(1, n)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_doubling_and_confluent_constants(g):
    assert derive_doubling_constant(g) == (-1) ** g
    assert confluent_constant(g) == 1


def test_elliptic_hankel_signs():
    assert [cantor_sign(1, n) for n in (2, 3, 4)] == [-1, 1, 1]


def test_kiepert_constant_needs_two_points():
    with pytest.raises(DomainError):
        derive_kiepert_constant(2, 1)


def test_sign_table_flags_agreement():
    rows = sign_table([1], [2, 3])
    kiepert = [r for r in rows if r.name == "kiepert"]
    assert kiepert and all(r.table_agrees for r in kiepert)


def test_fixtures_are_generated_and_pinned(pinned, tmp_path_factory):
    assert fixture_value(pinned, "kiepert", 1, 3) == derive_kiepert_constant(1, 3)
    assert fixture_value(pinned, "schur_sign", 2) == 1
    assert pinned["pole_orders"]["2,3"] == 15
    with pytest.raises(KeyError):
        fixture_value(pinned, "kiepert", 9, 9)


def test_existing_fixtures_are_read_back(tmp_path):
    path = tmp_path / "pinned.json"
    path.write_text(json.dumps({"constants": [], "pole_orders": {}}))
    assert load_sign_fixtures(str(path)) == {"constants": [], "pole_orders": {}}


@pytest.mark.parametrize("g, n", [(1, 2), (2, 2), (2, 3), (3, 2), (3, 4)])
def test_small_psi_is_a_signed_power_of_two_y(g, n):
    # the Wronskian of x, ..., x^{n-1} collapses to 1!...(n-1)! (2y)^{n(n-1)/2}
    assert derive_small_psi_sign(g, n) == derive_kiepert_constant(g, n)


def test_small_psi_sign_against_the_published_table():
    assert derive_small_psi_sign(1, 2) == published_small_psi_sign(1, 2) == -1
    assert derive_small_psi_sign(2, 1) == 1
    rows = [r for r in sign_table([2], [1, 2, 3, 4]) if r.name == "small_psi"]
    assert [r.n for r in rows] == [1, 2, 3]


def test_small_psi_range():
    with pytest.raises(DomainError):
        derive_small_psi_sign(2, 4)


def test_sign_table_starts_at_one_point():
    rows = sign_table([1, 2], [1, 2])
    cantor = [(r.genus, r.n) for r in rows if r.name == "cantor"]
    assert cantor == [(1, 2), (2, 2)]
