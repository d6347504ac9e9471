# src/config.py
import logging
import os
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()

DEFAULT_TOLERANCE = 1e-8
DEFAULT_THETA_TOLERANCE = 1e-12
DEFAULT_SAMPLES = 20
DEFAULT_RANK_THRESHOLD = 1e-8
DEFAULT_FIXTURES = "./fixtures/sign_constants.json"


def default_order(genus: int) -> int:
    return 8 * genus + 10


class Settings(BaseModel):
    tolerance: float = Field(
        DEFAULT_TOLERANCE, gt=0, description="Relative residual accepted by reports"
    )
    theta_tolerance: float = Field(
        DEFAULT_THETA_TOLERANCE, gt=0, description="Certified theta tail bound"
    )
    order: int = Field(
        0, ge=0, description="Series truncation order; 0 means 8g+10 for the genus"
    )
    samples: int = Field(DEFAULT_SAMPLES, ge=1, description="Samples per identity")
    seed: int = Field(0, description="Seed for deterministic sampling")
    rank_threshold: float = Field(
        DEFAULT_RANK_THRESHOLD,
        gt=0,
        description="Singular values below threshold*max count as zero",
    )
    log_level: str = Field("WARNING", description="Root logging level for the CLI")
    fixtures: str = Field(DEFAULT_FIXTURES, description="Sign-constant fixtures file")

    def order_for(self, genus: int) -> int:
        return self.order or default_order(genus)


def _env(name: str) -> Optional[str]:
    value = os.environ.get(f"SIGMA_{name}")
    if value is None or not value.strip():
        return None
    return value.strip()


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Settings from the environment (``SIGMA_*`` variables, ``.env`` honoured),
    falling back to the documented defaults.
    """
    overrides = {}
    for field in Settings.model_fields:
        value = _env(field.upper())
        if value is not None:
            overrides[field] = value
    return Settings(**overrides)


def configure_logging(level: Optional[str] = None) -> None:
    level = (level or get_settings().log_level).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


__all__ = [
    "Settings",
    "get_settings",
    "configure_logging",
    "default_order",
    "DEFAULT_TOLERANCE",
    "DEFAULT_THETA_TOLERANCE",
    "DEFAULT_SAMPLES",
]
