"""Report types for analytic bounds."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal

import pandas as pd

from abcprop.core.utils.numbers import format_value

BoundKind = Literal["lower", "upper"]


@dataclass(frozen=True)
class GuaranteeReport:
    """A proportionality-degree bound ``g(ell, k)``; ``k`` is ``None`` for k-independent bounds."""

    rule: str
    ell: int
    k: int | None
    kind: BoundKind
    value: Fraction | float
    residual: float = 0.0
    notes: tuple[str, ...] = field(default=())

    def to_row(self, exact: bool = False, digits: int = 6) -> dict[str, Any]:
        return {
            "rule": self.rule,
            "ell": self.ell,
            "k": "" if self.k is None else self.k,
            "kind": self.kind,
            "value": format_value(self.value, exact, digits),
            "residual": format_value(self.residual, False, digits),
            "notes": "; ".join(self.notes),
        }


@dataclass(frozen=True)
class EfficiencyReport:
    """Utilitarian-efficiency bound of a lambda-Thiele rule."""

    lambda_tag: str
    k: int
    alpha: float
    guarantee: float
    kind: BoundKind
    residual: float

    def to_row(self, exact: bool = False, digits: int = 6) -> dict[str, Any]:
        return {
            "lambda": self.lambda_tag,
            "k": self.k,
            "kind": self.kind,
            "alpha": format_value(self.alpha, exact, digits),
            "guarantee": format_value(self.guarantee, exact, digits),
            "residual": format_value(self.residual, False, digits),
        }


def report_frame(
    reports: Iterable[GuaranteeReport | EfficiencyReport], exact: bool = False, digits: int = 6
) -> pd.DataFrame:
    """Tabulate reports, one row each."""
    return pd.DataFrame([report.to_row(exact=exact, digits=digits) for report in reports])
