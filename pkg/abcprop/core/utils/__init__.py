"""Utility helpers."""

from abcprop.core.utils.env import budget_override, load_dotenv
from abcprop.core.utils.errors import (
    AbcPropError,
    ArtifactError,
    BudgetExceededError,
    ConfigLoadError,
    HypothesisError,
    InvalidInputError,
    LpError,
    ProfileFormatError,
    RootFindingError,
    StallError,
    exit_code_for_exception,
)
from abcprop.core.utils.logging import configure_logging, get_logger
from abcprop.core.utils.manifest import RunManifestWriter

__all__ = [
    "AbcPropError",
    "ArtifactError",
    "BudgetExceededError",
    "ConfigLoadError",
    "HypothesisError",
    "InvalidInputError",
    "LpError",
    "ProfileFormatError",
    "RootFindingError",
    "StallError",
    "budget_override",
    "configure_logging",
    "exit_code_for_exception",
    "get_logger",
    "load_dotenv",
    "RunManifestWriter",
]
