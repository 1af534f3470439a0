"""
Lab Configuration
Settings loaded from the environment (prefix REPMATCH_) and an optional .env file.
"""

from typing import Any, Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from .errors import DimensionCapError

load_dotenv()


class LabSettings(BaseSettings):
    """
    Runtime settings for the laboratory.

    Every field can be overridden with an environment variable, e.g.
    REPMATCH_DIM_CAP=8192 raises the d^n cap for Schur bases.
    """

    model_config = SettingsConfigDict(
        env_prefix="REPMATCH_",
        env_file=".env",
        extra="ignore",
    )

    dim_cap: int = Field(default=4096, ge=1)
    construction_tol: float = Field(default=1e-8, gt=0)
    verification_tol: float = Field(default=1e-9, gt=0)
    rank_tol: float = Field(default=1e-8, gt=0)
    rank_dim_cap: int = Field(default=64, ge=1)
    verification_samples: int = Field(default=20, ge=1)
    cache_dir: str = "data/schur_cache"
    log_file: str = "logs/repmatch.log"
    log_level: str = "INFO"


_active: Optional[LabSettings] = None


def get_settings() -> LabSettings:
    """Return the process-wide settings instance."""
    global _active
    if _active is None:
        _active = LabSettings()
    return _active


def use_settings(settings: LabSettings) -> LabSettings:
    """Make `settings` the process-wide instance (used by the CLI for flag overrides)."""
    global _active
    _active = settings
    return settings


def override_settings(**changes: Any) -> LabSettings:
    """
    Return a validated copy of the current settings with some fields replaced.

    Args:
        **changes: Field values to replace (None values are ignored)

    Returns:
        New LabSettings instance
    """
    current = get_settings().model_dump()
    current.update({k: v for k, v in changes.items() if v is not None})
    return LabSettings.model_validate(current)


def check_dimension_cap(n: int, d: int, settings: LabSettings = None) -> int:
    """
    Guard against building d^n-dimensional objects above the configured cap.

    Args:
        n: Number of tensor factors
        d: Local dimension
        settings: Settings to read the cap from (defaults to get_settings())

    Returns:
        The dimension d^n
    """
    settings = settings or get_settings()
    dim = d ** n
    if dim > settings.dim_cap:
        raise DimensionCapError(
            f"Dimension d^n = {d}^{n} = {dim} exceeds the cap of {settings.dim_cap} "
            f"(set REPMATCH_DIM_CAP or --dim-cap to raise it)"
        )
    return dim
