# src/graph.py
import logging
from typing import Any, Callable, Dict

from langgraph.checkpoint.memory import MemorySaver
from langgraph.graph import END, START, StateGraph

from .state import VerifyState
from .verifier import IDENTITIES, VerificationJob, identity_plan, prepare, run_identity

logger = logging.getLogger(__name__)


def prepare_node(state: VerifyState) -> dict:
    """Validate the job and warm the curve, period and evaluator caches."""
    try:
        job = VerificationJob(**state["job"])
        plan = identity_plan(job)
        numeric = [name for name in plan if name != "constants"]
        if numeric:
            prepare(job)
    except Exception as e:
        logger.warning("preparation failed: %r", e)
        return {"error": f"prepare failed: {e!r}"}
    return {"pending": plan}


def identity_node(name: str) -> Callable[[VerifyState], dict]:
    def node(state: VerifyState) -> dict:
        job = VerificationJob(**state["job"])
        try:
            report = run_identity(name, job).model_dump()
        except Exception as e:
            logger.warning("%s raised %r", name, e)
            report = {"identity": name, "passed": False, "error": f"{name} failed: {e!r}"}
        return {"reports": [report], "pending": "pop"}

    node.__name__ = f"verify_{name.replace('-', '_')}"
    return node


def summarize(state: VerifyState) -> dict:
    reports = state.get("reports", [])
    failed = [r["identity"] for r in reports if not r.get("passed")]
    errors = [r["error"] for r in reports if r.get("error")]
    if state.get("error"):
        errors.insert(0, state["error"])
    summary: Dict[str, Any] = {
        "count": len(reports),
        "passed": bool(reports) and not failed and not errors,
        "failed": failed,
        "errors": errors,
    }
    return {"summary": summary}


def route_after_prepare(state: dict) -> str:
    if state.get("error"):
        return "summarize"
    return next_identity(state)


def next_identity(state: dict) -> str:
    pending = state.get("pending", [])
    return pending[0] if pending else "summarize"


def build_graph(return_builder=False):
    builder = StateGraph(VerifyState)
    builder.add_node("prepare", prepare_node)
    for name in IDENTITIES:
        builder.add_node(name, identity_node(name))
    builder.add_node("summarize", summarize)

    targets = list(IDENTITIES) + ["summarize"]
    builder.add_edge(START, "prepare")
    builder.add_conditional_edges("prepare", route_after_prepare, targets)
    for name in IDENTITIES:
        builder.add_conditional_edges(name, next_identity, targets)
    builder.add_edge("summarize", END)

    if return_builder:
        return builder
    return builder.compile(checkpointer=MemorySaver())


graph = build_graph()
