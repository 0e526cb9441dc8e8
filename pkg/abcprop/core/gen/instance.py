"""Description attached to every generated worst-case instance."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from abcprop.core.model.profile import ApprovalProfile, VoterGroup
from abcprop.core.utils.numbers import format_value


@dataclass(frozen=True)
class InstanceSpec:
    """
    Construction parameters and predictions of a generated profile.

    Attributes:
        family: Generator name.
        params: Construction parameters.
        n: Total voter weight.
        m: Number of candidates.
        k: Committee size the instance targets.
        voters: The designated cohesive group, when the family has one.
        predicted: Value the construction is meant to witness.
        target: Committee favoured by adversarial tie-breaking.
        extra: Family-specific details.
    """

    family: str
    params: dict[str, Any]
    n: Fraction
    m: int
    k: int
    voters: VoterGroup | None = None
    predicted: Fraction | float | None = None
    target: frozenset[int] | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def check(self, profile: ApprovalProfile) -> None:
        """Assert that the derived sizes match ``profile``."""
        assert profile.total_weight == self.n, (profile.total_weight, self.n)
        assert profile.num_candidates == self.m, (profile.num_candidates, self.m)
        if self.voters is not None:
            self.voters.validate(profile)

    def summary(self, exact: bool = False, digits: int = 6) -> dict[str, str]:
        """Flat string rendering for CLI output and manifests."""
        rendered = {
            "family": self.family,
            "n": format_value(self.n, exact, digits),
            "m": str(self.m),
            "k": str(self.k),
        }
        for name, value in self.params.items():
            rendered[f"param.{name}"] = _render(value, exact, digits)
        if self.voters is not None:
            rendered["voters_weight"] = format_value(self.voters.weight, exact, digits)
        if self.predicted is not None:
            rendered["predicted"] = format_value(self.predicted, exact, digits)
        if self.target is not None:
            rendered["target"] = " ".join(str(c) for c in sorted(self.target))
        for name, value in self.extra.items():
            rendered[name] = _render(value, exact, digits)
        return rendered


def _render(value: Any, exact: bool, digits: int) -> str:
    if isinstance(value, Fraction | float | int) and not isinstance(value, bool):
        return format_value(value, exact, digits)
    if isinstance(value, frozenset | set):
        return " ".join(str(item) for item in sorted(value))
    return str(value)
