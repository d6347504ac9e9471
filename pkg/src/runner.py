# src/runner.py
import logging
import uuid
from typing import Any, Dict, Optional, Union

from .graph import graph
from .verifier import VerificationJob, run_identity

logger = logging.getLogger(__name__)


def _job_dict(job: Union[VerificationJob, Dict[str, Any]]) -> Dict[str, Any]:
    if isinstance(job, VerificationJob):
        return job.model_dump(by_alias=True)
    return dict(job)


def run_job(job: Union[VerificationJob, Dict[str, Any]], thread_id: Optional[str] = None) -> Dict[str, Any]:
    """
    Run every identity the job asks for through the verification graph.
    Never raises: failures come back as {"job": ..., "error": ...}.
    """
    data = _job_dict(job)
    thread_id = thread_id or str(uuid.uuid4())
    config = {"configurable": {"thread_id": thread_id}}
    input_state = {"job": data, "pending": [], "reports": [], "error": None, "summary": None}
    try:
        graph.invoke(input_state, config)
        state = graph.get_state(config).values
        summary = state.get("summary") or {}
        result = {
            "job": data,
            "thread_id": thread_id,
            "reports": state.get("reports", []),
            "passed": bool(summary.get("passed")),
            "summary": summary,
        }
        if state.get("error"):
            result["error"] = state["error"]
        return result
    except Exception as e:
        logger.error("verification graph failed: %r", e)
        return {"job": data, "thread_id": thread_id, "error": f"{data.get('identity', 'job')} failed: {e!r}"}


def run_single_identity(job: Union[VerificationJob, Dict[str, Any]]) -> Dict[str, Any]:
    """One identity without the graph; same error contract as ``run_job``."""
    data = _job_dict(job)
    name = data.get("identity", "all")
    try:
        parsed = job if isinstance(job, VerificationJob) else VerificationJob(**data)
        report = run_identity(parsed.identity, parsed)
        return {"job": data, "reports": [report.model_dump()], "passed": report.passed}
    except Exception as e:
        logger.error("%s failed: %r", name, e)
        return {"job": data, "error": f"{name} failed: {e!r}"}


def exit_code(result: Dict[str, Any]) -> int:
    """0 when every report passed, 1 for a failed identity, 2 for an error."""
    if result.get("error") or any(r.get("error") for r in result.get("reports", [])):
        return 2
    return 0 if result.get("passed") else 1
