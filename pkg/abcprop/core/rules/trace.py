"""Execution traces of sequential rules."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from abcprop.core.utils.numbers import format_value


@dataclass(frozen=True)
class CreditState:
    """Per-group credit balance (per unit voter) right after a purchase."""

    time: Fraction
    credits: tuple[Fraction, ...]


@dataclass(frozen=True)
class TraceStep:
    """
    One selection step.

    ``value`` is the marginal score gain per unit weight for Thiele-type rules, the purchase time
    for the credit process and the new maximal load for the load process.
    """

    chosen: int
    value: Fraction | float
    tie_set: tuple[int, ...]
    state: CreditState | None = None
    loads: tuple[Fraction, ...] | None = None


@dataclass(frozen=True)
class ElectionTrace:
    """Ordered steps of a sequential rule."""

    rule: str
    steps: tuple[TraceStep, ...]

    @property
    def order(self) -> tuple[int, ...]:
        """Candidates in selection order."""
        return tuple(step.chosen for step in self.steps)

    @property
    def tie_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(step.tie_set for step in self.steps)

    def to_log_lines(self, exact: bool = True) -> list[str]:
        """One line per step: ``step chosen value tie_set``."""
        lines = []
        for index, step in enumerate(self.steps, start=1):
            tie_set = ",".join(str(candidate) for candidate in step.tie_set)
            value = format_value(step.value, exact=exact)
            lines.append(f"{index} {step.chosen} {value} {{{tie_set}}}")
        return lines
