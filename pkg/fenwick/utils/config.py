"""Configuration utilities for the compact Fenwick toolkit."""

import json
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

from dotenv import load_dotenv
from loguru import logger
from pydantic import BaseModel, Field, field_validator

from ..errors import FormatError
from ..registry import normalize_tag

ENV_PREFIX = "FENWICK_"


class BenchDefaults(BaseModel):
    """Defaults for the bench command"""

    queries: int = Field(default=100_000, ge=1)
    bound: int = Field(default=64, ge=1, lt=1 << 64)
    sizes: str = "ladder:10:26"
    seed: int = Field(default=0, ge=0, lt=1 << 64)


class Settings(BaseModel):
    """Validated settings from config.json and FENWICK_* environment variables"""

    log_level: str = "INFO"
    hole_log: Optional[int] = Field(default=14, ge=1)
    block_words: int = Field(default=16, ge=1)
    default_variant: str = "byte[l]"
    portable_bitops: bool = False
    bench: BenchDefaults = Field(default_factory=BenchDefaults)

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, v: str) -> str:
        return v.upper()

    @field_validator("default_variant")
    @classmethod
    def _known_variant(cls, v: str) -> str:
        return normalize_tag(v)


def _env_overrides() -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}
    for key in ("log_level", "hole_log", "block_words", "portable_bitops"):
        raw = os.getenv(ENV_PREFIX + key.upper())
        if raw is None or raw == "":
            continue
        if key == "hole_log" and raw.strip().lower() in ("none", "off", "inf"):
            overrides[key] = None
        else:
            overrides[key] = raw
    return overrides


def load_config(config_path: Optional[Union[str, Path]] = None) -> Settings:
    """
    Load settings from a JSON file, then apply environment overrides.

    Args:
        config_path: Path to the configuration file (default: ./config.json)

    Returns:
        Validated Settings
    """
    load_dotenv()

    if config_path:
        config_path = Path(config_path)
    else:
        config_path = Path.cwd() / "config.json"

    logger.debug(f"Loading configuration from {config_path}")

    data: Dict[str, Any] = {}
    if not config_path.exists():
        logger.warning(f"Configuration file {config_path} not found. Using defaults.")
    else:
        try:
            with open(config_path, "r") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            logger.error(f"Error loading configuration from {config_path}: {e}")
            raise FormatError(f"{config_path}: invalid JSON: {e}") from e

    overrides = _env_overrides()
    if overrides:
        logger.debug(f"Environment overrides: {sorted(overrides)}")
    data.update(overrides)
    return Settings.model_validate(data)
