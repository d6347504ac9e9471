# src/build_fixtures.py
import json
import logging
import os
from typing import Any, Dict, Iterable, Optional

from .config import get_settings
from .constants import generate_sign_fixtures

logger = logging.getLogger(__name__)


def build_fixtures(
    path: Optional[str] = None,
    genera: Iterable[int] = range(1, 7),
    ns: Iterable[int] = range(1, 7),
    progress: bool = True,
) -> Dict[str, Any]:
    """
    Derive the sign constants and psi pole orders and write them as canonical
    JSON (sorted keys, two-space indent). Returns the written data.
    """
    path = path or get_settings().fixtures
    data = generate_sign_fixtures(genera, ns, progress=progress)
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    disagreements = [
        row for row in data["constants"] if row.get("table_agrees") is False
    ]
    logger.info(
        "wrote %d constants to %s (%d differ from the published tables)",
        len(data["constants"]),
        path,
        len(disagreements),
    )
    return data


if __name__ == "__main__":
    from .config import configure_logging

    configure_logging("INFO")
    build_fixtures()
