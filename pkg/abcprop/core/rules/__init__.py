"""Approval-based committee election rules."""

from abcprop.core.rules.apportionment import dhondt_apportionment, seats_by_block
from abcprop.core.rules.phragmen import (
    MaxPhragmenOutcome,
    max_phragmen,
    optimal_max_load,
    seq_phragmen_credit,
    seq_phragmen_load,
)
from abcprop.core.rules.sequential import max_last_step_gain, seq_pav, seq_thiele
from abcprop.core.rules.thiele import (
    DEFAULT_ENUMERATION_BUDGET,
    ThieleOutcome,
    pav,
    thiele_exact,
    thiele_score,
)
from abcprop.core.rules.ties import TieBreak, TiePolicy
from abcprop.core.rules.trace import CreditState, ElectionTrace, TraceStep
from abcprop.core.rules.weights import LambdaWeights, parse_lambda

__all__ = [
    "DEFAULT_ENUMERATION_BUDGET",
    "CreditState",
    "ElectionTrace",
    "LambdaWeights",
    "MaxPhragmenOutcome",
    "ThieleOutcome",
    "TieBreak",
    "TiePolicy",
    "TraceStep",
    "dhondt_apportionment",
    "max_last_step_gain",
    "max_phragmen",
    "optimal_max_load",
    "parse_lambda",
    "pav",
    "seats_by_block",
    "seq_pav",
    "seq_phragmen_credit",
    "seq_phragmen_load",
    "seq_thiele",
    "thiele_exact",
    "thiele_score",
]
