# src/state.py
from typing import Annotated, Any, Dict, List, Optional, Union

from typing_extensions import TypedDict


def update_pending(left: List[str], right: Optional[Union[str, List[str]]]) -> List[str]:
    """
    Updates the queue of identities still to run.
    """
    if right is None:
        return left
    if right == "pop":
        return left[1:]
    if isinstance(right, str):
        return left + [right]
    return left + list(right)


def add_reports(left: List[Dict[str, Any]], right: Optional[List[Dict[str, Any]]]) -> List[Dict[str, Any]]:
    if not right:
        return left
    return left + list(right)


class VerifyState(TypedDict):
    job: Dict[str, Any]
    pending: Annotated[List[str], update_pending]
    reports: Annotated[List[Dict[str, Any]], add_reports]
    error: Optional[str]
    summary: Optional[Dict[str, Any]]
