"""Settings loaded from the [tool.conformal_forge] table of pyproject.toml."""

import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from conformal_forge.constants import (
    DEFAULT_DPOW_BOUND,
    DEFAULT_OUTPUT_FORMAT,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    SEED_ENV_VAR,
)


@dataclass(frozen=True)
class Settings:
    """Run defaults.

    Attributes:
        debug: Console logging at DEBUG instead of WARNING
        log_file: Optional path of the DEBUG file sink
        seed: Seed for every random sampler
        dpow_bound: Default ∂-degree truncation for closures
        trials: Default number of random generators in evidence reports
        samples: Default number of random coefficient-algebra samples
        output_format: "text" or "json"
    """
    debug: bool = False
    log_file: Optional[str] = None
    seed: int = DEFAULT_SEED
    dpow_bound: int = DEFAULT_DPOW_BOUND
    trials: int = DEFAULT_TRIALS
    samples: int = DEFAULT_SAMPLES
    output_format: str = DEFAULT_OUTPUT_FORMAT


def _candidate_pyprojects() -> list[Path]:
    return [
        Path(__file__).parent.parent / "pyproject.toml",
        Path.cwd() / "pyproject.toml",
    ]


def _read_tool_table() -> dict:
    for path in _candidate_pyprojects():
        if not path.exists():
            continue
        try:
            with open(path, "rb") as f:
                config = tomllib.load(f)
        except (OSError, tomllib.TOMLDecodeError):
            continue
        table = config.get("tool", {}).get("conformal_forge")
        if table is not None:
            return table
    return {}


def env_seed() -> Optional[int]:
    """Seed from the environment, if set to an integer."""
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or not raw.strip():
        return None
    try:
        return int(raw.strip())
    except ValueError:
        return None


def load_settings() -> Settings:
    """Load settings from pyproject.toml, falling back to the constants.

    Returns:
        Settings with the environment seed override already applied
    """
    table = _read_tool_table()
    logging_cfg = table.get("logging", {})
    defaults = table.get("defaults", {})

    settings = Settings(
        debug=bool(logging_cfg.get("debug", False)),
        log_file=logging_cfg.get("file"),
        seed=int(defaults.get("seed", DEFAULT_SEED)),
        dpow_bound=int(defaults.get("dpow_bound", DEFAULT_DPOW_BOUND)),
        trials=int(defaults.get("trials", DEFAULT_TRIALS)),
        samples=int(defaults.get("samples", DEFAULT_SAMPLES)),
        output_format=str(defaults.get("output_format", DEFAULT_OUTPUT_FORMAT)),
    )
    seed = env_seed()
    if seed is not None:
        settings = replace(settings, seed=seed)
    return settings
