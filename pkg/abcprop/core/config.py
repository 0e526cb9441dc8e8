"""Configuration models and YAML loading."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, Field, model_validator

from abcprop.core.utils.env import budget_override
from abcprop.core.utils.errors import ConfigLoadError


class EnumerationConfig(BaseModel):
    """Limits for exhaustive committee enumeration."""

    budget: int = 10_000_000

    @model_validator(mode="after")
    def validate_budget(self) -> EnumerationConfig:
        """Ensure the committee budget is positive."""
        if self.budget <= 0:
            raise ValueError("enumeration.budget must be > 0.")
        return self


class RulesConfig(BaseModel):
    """Default rule execution settings."""

    tie_break: Literal["lexmin", "lexmax"] = "lexmin"


class AuditConfig(BaseModel):
    """Cohesive-group search settings."""

    seed_groups: int = 3

    @model_validator(mode="after")
    def validate_audit(self) -> AuditConfig:
        """Validate the seed bound."""
        if self.seed_groups < 1:
            raise ValueError("audit.seed_groups must be >= 1.")
        return self


class BoundsConfig(BaseModel):
    """Root-finding settings for analytic bounds."""

    tolerance: float = 1e-9
    max_iterations: int = 200

    @model_validator(mode="after")
    def validate_bounds(self) -> BoundsConfig:
        """Validate bisection settings."""
        if self.tolerance <= 0:
            raise ValueError("bounds.tolerance must be > 0.")
        if self.max_iterations < 1:
            raise ValueError("bounds.max_iterations must be >= 1.")
        return self


class LpConfig(BaseModel):
    """Linear-program building and solving settings."""

    backend: Literal["auto", "simplex", "highs"] = "auto"
    simplex_size_limit: int = 20_000
    feasibility_tolerance: float = 1e-7
    max_denominator: int = 1_000_000
    exact_max_k: int = 14
    relaxed_max_k: int = 400
    abstract_max_k: int = 12

    @model_validator(mode="after")
    def validate_lp(self) -> LpConfig:
        """Validate LP budgets and tolerances."""
        if self.simplex_size_limit < 1:
            raise ValueError("lp.simplex_size_limit must be >= 1.")
        if self.feasibility_tolerance <= 0:
            raise ValueError("lp.feasibility_tolerance must be > 0.")
        if self.max_denominator < 1:
            raise ValueError("lp.max_denominator must be >= 1.")
        for name in ("exact_max_k", "relaxed_max_k", "abstract_max_k"):
            if getattr(self, name) < 1:
                raise ValueError(f"lp.{name} must be >= 1.")
        return self


class OutputConfig(BaseModel):
    """Output and artifact settings."""

    artifacts_dir: Path = Path("../artifacts")
    significant_digits: int = 6

    @model_validator(mode="after")
    def validate_output(self) -> OutputConfig:
        """Validate float rendering."""
        if not 1 <= self.significant_digits <= 17:
            raise ValueError("output.significant_digits must be within [1, 17].")
        return self


class AppConfig(BaseModel):
    """Top-level application configuration."""

    enumeration: EnumerationConfig = Field(default_factory=EnumerationConfig)
    rules: RulesConfig = Field(default_factory=RulesConfig)
    audit: AuditConfig = Field(default_factory=AuditConfig)
    bounds: BoundsConfig = Field(default_factory=BoundsConfig)
    lp: LpConfig = Field(default_factory=LpConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)


def _resolve_config_path(path: Path) -> Path:
    """Resolve and validate a config file path."""
    resolved_path = path.expanduser().resolve()
    if not resolved_path.exists():
        raise ConfigLoadError(f"Config file not found: {resolved_path}")
    if not resolved_path.is_file():
        raise ConfigLoadError(f"Config path is not a file: {resolved_path}")
    return resolved_path


def load_config(path: Path) -> AppConfig:
    """
    Load and validate application config from YAML.

    Relative paths are resolved from the YAML file parent directory, and ``ABC_BUDGET``
    overrides ``enumeration.budget``.

    Args:
        path: YAML config file path.

    Returns:
        Validated application config.
    """
    config_path = _resolve_config_path(path)
    try:
        with config_path.open("r", encoding="utf-8") as handle:
            raw_config: Any = yaml.safe_load(handle) or {}
    except OSError as exc:
        raise ConfigLoadError(f"Failed to read config file {config_path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigLoadError(f"Invalid YAML in config file {config_path}: {exc}") from exc

    if not isinstance(raw_config, dict):
        raise ConfigLoadError("YAML root must be a mapping/object.")

    return _build_config(raw_config, config_path.parent)


def _build_config(raw_config: dict[str, Any], base_dir: Path) -> AppConfig:
    """Build, path-resolve, and environment-override config from raw data."""
    try:
        config = AppConfig.model_validate(raw_config)
    except Exception as exc:
        raise ConfigLoadError(f"Config validation failed: {exc}") from exc
    artifacts_dir = config.output.artifacts_dir
    resolved_artifacts_dir = (
        artifacts_dir.expanduser().resolve()
        if artifacts_dir.is_absolute()
        else (base_dir / artifacts_dir).resolve()
    )
    updated_output = config.output.model_copy(update={"artifacts_dir": resolved_artifacts_dir})
    updates: dict[str, Any] = {"output": updated_output}

    override = budget_override()
    if override is not None:
        updates["enumeration"] = config.enumeration.model_copy(update={"budget": override})
    return config.model_copy(update=updates)


def default_config() -> AppConfig:
    """Return built-in defaults with the environment budget override applied."""
    return _build_config({}, Path.cwd())


def dump_config_to_yaml(config: AppConfig) -> str:
    """
    Serialize config to canonical YAML for reproducibility.

    Args:
        config: App config.

    Returns:
        YAML string.
    """
    payload = config.model_dump(mode="json")
    return yaml.safe_dump(payload, sort_keys=True, default_flow_style=False)
