import json
from unittest.mock import patch

from src.cli import main, parse_args


def test_parse_verify_arguments():
    args = parse_args(["verify", "kiepert", "--genus", "2", "--n", "3"])
    assert args.command == "verify"
    assert args.identity == "kiepert"
    assert (args.genus, args.n, args.j) == (2, 3, None)


def test_schur_build_prints_json(capsys):
    assert main(["schur", "build", "--genus", "1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["genus"] == 1
    assert data["weight"] == 1


def test_psi_compute_for_an_elliptic_curve(capsys):
    assert main(["psi", "compute", "--genus", "1", "--lambdas", "0", "-1", "0", "--n", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["pole_order"] == 3


def test_curve_expand_with_roots(capsys):
    assert main(["curve", "expand", "--roots", "-1", "0", "1", "--order", "9"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["genus"] == 1
    assert data["order"] == 9


def test_library_errors_exit_with_two(capsys):
    assert main(["curve", "expand", "--genus", "2", "--order", "3"]) == 2
    assert "TruncationError" in capsys.readouterr().out


@patch("src.cli.run_single_identity")
def test_verify_failed_identity_exits_with_one(mock_run, capsys):
    mock_run.return_value = {"job": {}, "reports": [{"identity": "y", "passed": False, "residuals": [1.0]}], "passed": False}
    assert main(["verify", "y", "--genus", "1", "--samples", "2"]) == 1
    job = mock_run.call_args[0][0]
    assert (job.identity, job.genus, job.samples) == ("y", 1, 2)


@patch("src.cli.run_job")
def test_verify_all_reads_the_config(mock_run, tmp_path, capsys):
    path = tmp_path / "job.json"
    path.write_text(json.dumps({"genus": 1, "lambda": [0, -1, 0], "seed": 4}))
    mock_run.return_value = {"job": {}, "reports": [{"identity": "y", "passed": True}], "passed": True}
    assert main(["verify", "all", "--config", str(path)]) == 0
    job = mock_run.call_args[0][0]
    assert job.identity == "all"
    assert job.seed == 4


def test_verify_bad_config_exits_with_two(tmp_path, capsys):
    path = tmp_path / "job.json"
    path.write_text(json.dumps({"genus": 0}))
    assert main(["verify", "y", "--config", str(path)]) == 2
    assert "error" in json.loads(capsys.readouterr().out)
