from unittest.mock import MagicMock, patch

from src.runner import exit_code, run_job, run_single_identity
from src.verifier import VerificationJob


@patch("src.runner.graph")
def test_run_job_with_mock(mock_graph):
    mock_snapshot = MagicMock()
    mock_snapshot.values = {
        "reports": [{"identity": "y", "passed": True}],
        "summary": {"passed": True, "count": 1, "failed": [], "errors": []},
        "error": None,
    }
    mock_graph.get_state.return_value = mock_snapshot
    result = run_job({"genus": 1, "identity": "y"}, "test-thread")
    assert result["passed"] is True
    assert result["thread_id"] == "test-thread"
    assert "error" not in result
    config = mock_graph.invoke.call_args[0][1]
    assert config == {"configurable": {"thread_id": "test-thread"}}


@patch("src.runner.graph")
def test_run_job_never_raises(mock_graph):
    mock_graph.invoke.side_effect = RuntimeError("checkpoint lost")
    result = run_job({"genus": 2, "identity": "all"})
    assert result["error"] == "all failed: RuntimeError('checkpoint lost')"
    assert result["job"]["genus"] == 2


@patch("src.runner.graph")
def test_run_job_accepts_models(mock_graph):
    mock_graph.get_state.return_value = MagicMock(values={"reports": [], "summary": {}})
    result = run_job(VerificationJob(genus=1, identity="y", samples=2))
    assert result["job"]["identity"] == "y"
    assert "lambda" in result["job"]


@patch("src.runner.run_identity")
def test_run_single_identity(mock_run):
    mock_run.return_value = MagicMock(passed=False, model_dump=lambda: {"identity": "fs", "passed": False})
    result = run_single_identity({"genus": 1, "identity": "fs"})
    assert result["passed"] is False
    assert exit_code(result) == 1


def test_run_single_identity_reports_invalid_jobs():
    result = run_single_identity({"genus": 1, "identity": "nope"})
    assert result["error"].startswith("nope failed:")
    assert exit_code(result) == 2


def test_exit_codes():
    assert exit_code({"passed": True, "reports": [{"passed": True}]}) == 0
    assert exit_code({"passed": False, "reports": [{"passed": False}]}) == 1
    assert exit_code({"passed": False, "reports": [{"passed": False, "error": "y failed: x"}]}) == 2
    assert exit_code({"error": "all failed"}) == 2
