"""Run the targeted rule on a generated instance under adversarial tie-breaking."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from abcprop.core.audit.report import avg_satisfaction, utilitarian_ratio
from abcprop.core.gen.instance import InstanceSpec
from abcprop.core.model.profile import ApprovalProfile, Committee
from abcprop.core.rules.phragmen import max_phragmen, seq_phragmen_credit
from abcprop.core.rules.sequential import seq_pav
from abcprop.core.rules.thiele import DEFAULT_ENUMERATION_BUDGET, thiele_exact
from abcprop.core.rules.ties import TieBreak
from abcprop.core.rules.weights import LambdaWeights
from abcprop.core.utils.errors import InvalidInputError
from abcprop.core.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class InstanceCheck:
    """Committee chosen on a generated instance and how the designated voters fare."""

    rule: str
    committee: Committee
    satisfaction: Fraction | None
    utilitarian: Fraction
    predicted: Fraction | float | None


def evaluate_instance(
    profile: ApprovalProfile,
    spec: InstanceSpec,
    weights: LambdaWeights | None = None,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> InstanceCheck:
    """
    Elect on ``profile`` with ties resolved toward ``spec.target``.

    Args:
        profile: Generated profile.
        spec: Its instance spec.
        weights: Thiele weights for the Thiele families (PAV by default).
        budget: Enumeration budget for the exhaustive rules.

    Returns:
        The committee, the designated group's average satisfaction and the utilitarian ratio.
    """
    tie_break = TieBreak.adversarial(spec.target or ())
    k = spec.k
    if spec.family == "phragmen-hard":
        rule = "seq-phragmen"
        committee, _ = seq_phragmen_credit(profile, k, tie_break)
    elif spec.family == "maxphragmen-tie":
        rule = "max-phragmen"
        committee = tie_break.choose_committee(max_phragmen(profile, k, budget).committees)
    elif spec.family in ("thiele-upper", "efficiency"):
        weights = weights or LambdaWeights.pav()
        rule = weights.tag
        committee = thiele_exact(profile, weights, k, tie_break, budget).committee
    elif spec.family == "seqpav-hard":
        rule = "seq-pav"
        committee, _ = seq_pav(profile, k, tie_break)
    else:
        raise InvalidInputError(f"no targeted rule for instance family '{spec.family}'.")

    satisfaction = (
        avg_satisfaction(profile, spec.voters, committee) if spec.voters is not None else None
    )
    logger.info("%s on %s: satisfaction=%s", rule, spec.family, satisfaction)
    return InstanceCheck(
        rule=rule,
        committee=committee,
        satisfaction=satisfaction,
        utilitarian=utilitarian_ratio(profile, committee, k),
        predicted=spec.predicted,
    )
