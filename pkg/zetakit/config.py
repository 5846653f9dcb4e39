"""
zetakit Configuration Module

Loads config from ~/.config/zetakit/config.yaml with DEFAULTS fallback.
Every pinned default (precision, ladder, extrapolation order, recognition
bound, job count) lives in DEFAULTS and nowhere else.
"""

import copy
import os
import warnings
from pathlib import Path

# Config file location (ZETAKIT_CONFIG overrides)
CONFIG_FILE = Path(
    os.environ.get("ZETAKIT_CONFIG", Path.home() / ".config" / "zetakit" / "config.yaml")
)

JOBS_ENV = "ZETAKIT_JOBS"

# Default values (used if config file missing)
DEFAULTS = {
    "numeric": {
        "bits": 192,
        # ladder = ladder_base * 2**k for k in range(ladder_rungs)
        "ladder_base": 1024,
        "ladder_rungs": 5,
        "order": 4,
        # extrapolation error above this deepens the ladder
        "target": 1e-13,
        "max_rungs": 8,
    },
    "recognition": {
        "max_den": 1_000_000,
    },
    "run": {
        "jobs": 1,
        "format": "json",
        "cap": 12,
        "max_weight": 11,
    },
    "output": {
        "digits": 30,
    },
}


_cached_config: dict | None = None


def load_config() -> dict:
    """Load config from YAML file, falling back to defaults.

    Cached after first call -- all callers receive the same dict object.
    The returned dict should not be mutated; call _reset_config_cache()
    + load_config() if fresh config is needed.
    """
    global _cached_config
    if _cached_config is not None:
        return _cached_config

    config = copy.deepcopy(DEFAULTS)

    if CONFIG_FILE.exists():
        try:
            import yaml

            with open(CONFIG_FILE) as f:
                file_config = yaml.safe_load(f) or {}

            # Merge each known section over its defaults
            for section, values in DEFAULTS.items():
                if section in file_config:
                    if not isinstance(file_config[section], dict):
                        raise ValueError(f"section '{section}' must be a mapping")
                    config[section] = {**values, **file_config[section]}
        except Exception as e:
            warnings.warn(f"Could not load config: {e}")

    _cached_config = config
    return config


def _reset_config_cache():
    """Reset cached config. Only for testing."""
    global _cached_config
    _cached_config = None


def default_ladder(config: dict | None = None) -> list[int]:
    """Truncation ladder from the numeric section: base * 2**k."""
    numeric = (config or load_config())["numeric"]
    return [numeric["ladder_base"] * 2**k for k in range(numeric["ladder_rungs"])]


def env_jobs() -> int | None:
    """Job count from ZETAKIT_JOBS, or None when unset/empty."""
    raw = os.environ.get(JOBS_ENV, "").strip()
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{JOBS_ENV} must be an integer, got '{raw}'")
