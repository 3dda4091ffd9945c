"""
Runtime configuration for the sigma-algebra toolkit.

Values come from the environment (optionally a .env file in the working
directory). Call get_settings.cache_clear() after changing the environment.
"""

import os
from dataclasses import dataclass
from functools import lru_cache

from dotenv import load_dotenv

from .errors import SigmaError

DEFAULT_CAPACITY = 4096
DEFAULT_JOBS = 1
DEFAULT_LOG_LEVEL = "WARNING"


@dataclass(frozen=True)
class Settings:
    """Immutable snapshot of the environment-driven settings."""

    capacity: int = DEFAULT_CAPACITY
    jobs: int = DEFAULT_JOBS
    log_level: str = DEFAULT_LOG_LEVEL


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise SigmaError(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise SigmaError(f"{name} must be at least 1, got {value}")
    return value


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Load settings once; later calls return the cached snapshot."""
    load_dotenv()
    return Settings(
        capacity=_int_from_env("SIGMA_CAPACITY", DEFAULT_CAPACITY),
        jobs=_int_from_env("SIGMA_JOBS", DEFAULT_JOBS),
        log_level=os.getenv("SIGMA_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper(),
    )


def capacity_limit() -> int:
    """Largest admissible ground-set size, product ground sets included."""
    return get_settings().capacity


__all__ = ["Settings", "get_settings", "capacity_limit", "DEFAULT_CAPACITY"]
