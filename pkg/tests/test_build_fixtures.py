import json

from src.build_fixtures import build_fixtures


def test_build_fixtures_writes_canonical_json(tmp_path):
    path = tmp_path / "nested" / "sign_constants.json"
    data = build_fixtures(str(path), genera=[1], ns=[1, 2, 3], progress=False)
    text = path.read_text()
    assert json.loads(text) == data
    assert text == json.dumps(data, indent=2, sort_keys=True) + "\n"
    kiepert = [row for row in data["constants"] if row["name"] == "kiepert"]
    assert [row["derived"] for row in kiepert] == [-1, 1]
    assert data["pole_orders"] == {"1,2": 3, "1,3": 8}


def test_fixture_rows_for_a_single_point(tmp_path):
    data = build_fixtures(str(tmp_path / "signs.json"), genera=[1], ns=[1, 2, 3], progress=False)
    names = {(row["name"], row["n"]) for row in data["constants"]}
    assert ("fs", 1) in names
    assert ("small_psi", 1) in names
    assert ("cantor", 1) not in names
    assert ("cantor", 2) in names
