"""
Configuration
Loads size caps, budgets and defaults from YAML, falling back to built-in defaults
"""
import logging
import os
from functools import lru_cache
from pathlib import Path
from typing import Optional, Union

import yaml
from pydantic import BaseModel, Field

logger = logging.getLogger("pbeauville.config")

DEFAULT_CONFIG_PATH = Path(__file__).parent / "config.yaml"
CONFIG_ENV = "BEAUVILLE_CONFIG"
SEED_ENV = "BEAUVILLE_SEED"


class Limits(BaseModel):
    max_order: int = 2 ** 24
    table_order: int = 2 ** 12
    exhaustive_order: int = 2 ** 12
    automorphism_scan_order: int = 2 ** 10
    witness_scan_order: int = 2 ** 12


class Consistency(BaseModel):
    exhaustive_order: int = 2 ** 12
    samples: int = 10 ** 6


class Regularity(BaseModel):
    exhaustive_order: int = 64
    samples: int = 500


class Search(BaseModel):
    random_budget: int = 200_000


class ReportSettings(BaseModel):
    evidence_limit: int = 50


class LoggingSettings(BaseModel):
    level: str = "INFO"


class Settings(BaseModel):
    limits: Limits = Field(default_factory=Limits)
    consistency: Consistency = Field(default_factory=Consistency)
    regularity: Regularity = Field(default_factory=Regularity)
    search: Search = Field(default_factory=Search)
    report: ReportSettings = Field(default_factory=ReportSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)


def load_settings(path: Optional[Union[str, Path]] = None) -> Settings:
    """
    Load configuration from a YAML file.
    Uses $BEAUVILLE_CONFIG, then the packaged config.yaml; missing files fall back to defaults.
    """
    config_file = Path(path or os.environ.get(CONFIG_ENV) or DEFAULT_CONFIG_PATH)
    if not config_file.exists():
        logger.warning(f"Config file {config_file} not found, using defaults")
        return Settings()

    with open(config_file, 'r') as f:
        raw = yaml.safe_load(f) or {}
    logger.debug(f"Loaded configuration from {config_file}")
    return Settings.model_validate(raw)


@lru_cache(maxsize=None)
def get_settings() -> Settings:
    """Process-wide settings, loaded once."""
    return load_settings()


def resolve_seed(seed: Optional[int] = None) -> int:
    """Seed from the explicit argument, else $BEAUVILLE_SEED, else 0."""
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{SEED_ENV} must be an integer, got {env!r}")
    return 0
