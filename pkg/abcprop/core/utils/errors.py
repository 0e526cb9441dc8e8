"""Domain-specific error taxonomy for abcprop."""

from __future__ import annotations


class AbcPropError(Exception):
    """Base abcprop error with CLI exit-code metadata."""

    exit_code: int = 1
    error_code: str = "abcprop_error"


class ConfigLoadError(AbcPropError, ValueError):
    """Configuration loading/validation error."""

    exit_code = 1
    error_code = "config_error"


class ProfileFormatError(AbcPropError, ValueError):
    """Malformed profile document."""

    exit_code = 1
    error_code = "profile_format_error"

    def __init__(self, message: str, line_number: int | None = None) -> None:
        self.line_number = line_number
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{prefix}{message}")


class InvalidInputError(AbcPropError, ValueError):
    """Invalid committee, weight function, or size parameter."""

    exit_code = 1
    error_code = "invalid_input"


class HypothesisError(AbcPropError, ValueError):
    """A construction or bound was requested outside its stated hypotheses."""

    exit_code = 1
    error_code = "hypothesis_violated"


class BudgetExceededError(AbcPropError, RuntimeError):
    """Enumeration or problem size exceeds the configured budget."""

    exit_code = 2
    error_code = "budget_exceeded"

    def __init__(self, message: str, required: int, budget: int) -> None:
        self.required = required
        self.budget = budget
        super().__init__(f"{message} (required={required}, budget={budget})")


class StallError(AbcPropError, RuntimeError):
    """Sequential Phragmén cannot fill the committee."""

    exit_code = 2
    error_code = "phragmen_stall"

    def __init__(self, message: str, step: int) -> None:
        self.step = step
        super().__init__(f"{message} (stalled at step {step})")


class RootFindingError(AbcPropError, RuntimeError):
    """Bisection could not bracket or converge on a bound equation."""

    exit_code = 2
    error_code = "root_finding_error"


class LpError(AbcPropError, RuntimeError):
    """Linear program could not be built, solved, or converted."""

    exit_code = 2
    error_code = "lp_error"


class ArtifactError(AbcPropError, RuntimeError):
    """Artifact write/read error."""

    exit_code = 2
    error_code = "artifact_error"


def exit_code_for_exception(exc: Exception) -> int:
    """
    Resolve process exit code for an exception.

    Args:
        exc: Raised exception.

    Returns:
        Integer process exit code.
    """
    return int(getattr(exc, "exit_code", 1))
