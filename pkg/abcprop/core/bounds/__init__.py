"""Analytic proportionality and efficiency bounds."""

from abcprop.core.bounds.phragmen import maxphragmen_upper, phragmen_lower, phragmen_upper
from abcprop.core.bounds.roots import bisect_root
from abcprop.core.bounds.seqpav import seqpav_degree_from_h, seqpav_delta
from abcprop.core.bounds.thiele import (
    thiele_efficiency_lower,
    thiele_efficiency_upper,
    thiele_guarantee,
    thiele_upper,
)
from abcprop.core.bounds.types import EfficiencyReport, GuaranteeReport, report_frame

__all__ = [
    "EfficiencyReport",
    "GuaranteeReport",
    "bisect_root",
    "maxphragmen_upper",
    "phragmen_lower",
    "phragmen_upper",
    "report_frame",
    "seqpav_degree_from_h",
    "seqpav_delta",
    "thiele_efficiency_lower",
    "thiele_efficiency_upper",
    "thiele_guarantee",
    "thiele_upper",
]
