"""Exact lambda-Thiele rules by committee enumeration."""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from abcprop.core.model.profile import ApprovalProfile, Committee
from abcprop.core.rules.ties import TieBreak
from abcprop.core.rules.weights import LambdaWeights, Weight
from abcprop.core.utils.errors import BudgetExceededError, InvalidInputError
from abcprop.core.utils.logging import get_logger

logger = get_logger(__name__)

DEFAULT_ENUMERATION_BUDGET = 10_000_000


@dataclass(frozen=True)
class ThieleOutcome:
    """Winning committee, its score, and (optionally) every optimal committee."""

    committee: Committee
    score: Weight
    optimal: tuple[Committee, ...] | None = None


def thiele_score(
    profile: ApprovalProfile, weights: LambdaWeights, committee: Iterable[int]
) -> Weight:
    """
    Compute the lambda-score of a committee.

    Args:
        profile: Approval profile.
        weights: Thiele weights.
        committee: Committee members.

    Returns:
        ``sum_g w_g * sum_{j <= |A_g & W|} lambda(j)``, exact when ``weights`` is exact.
    """
    members = profile.validate_committee(committee)
    cumulative = weights.cumulative(len(members))
    score: Weight = Fraction(0)
    for group in profile.groups:
        score += group.weight * cumulative[len(group.approved & members)]
    return score


def check_enumeration_budget(num_candidates: int, k: int, budget: int) -> int:
    """Return ``C(m, k)`` or raise when it exceeds ``budget``."""
    if not 0 <= k <= num_candidates:
        raise InvalidInputError(f"committee size k={k} must lie in [0, m={num_candidates}].")
    count = math.comb(num_candidates, k)
    if count > budget:
        raise BudgetExceededError(
            f"enumerating C({num_candidates},{k}) committees exceeds the budget", count, budget
        )
    return count


def _integer_scoring(
    profile: ApprovalProfile, weights: LambdaWeights, k: int
) -> tuple[list[int], list[int], Fraction] | None:
    """Scale weights and prefix sums to integers; ``None`` when lambda is not rational."""
    if not weights.is_exact:
        return None
    cumulative = [Fraction(value) for value in weights.cumulative(k)]
    weight_scale = math.lcm(*(group.weight.denominator for group in profile.groups), 1)
    lambda_scale = math.lcm(*(value.denominator for value in cumulative))
    int_weights = [int(group.weight * weight_scale) for group in profile.groups]
    int_cumulative = [int(value * lambda_scale) for value in cumulative]
    return int_weights, int_cumulative, Fraction(1, weight_scale * lambda_scale)


def thiele_exact(
    profile: ApprovalProfile,
    weights: LambdaWeights,
    k: int,
    tie_break: TieBreak | None = None,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    exhaustive: bool = False,
) -> ThieleOutcome:
    """
    Maximize the lambda-score over all size-``k`` committees.

    Args:
        profile: Approval profile.
        weights: Thiele weights.
        k: Committee size.
        tie_break: Preference among optimal committees (lexicographic-min by default).
        budget: Maximum number of committees to enumerate.
        exhaustive: Also return every optimal committee.

    Returns:
        Outcome holding the preferred optimal committee.
    """
    policy = tie_break or TieBreak.lexmin()
    weights.require_length(k)
    count = check_enumeration_budget(profile.num_candidates, k, budget)
    logger.debug("Enumerating %d committees of size %d (%s)", count, k, weights.tag)

    masks = [sum(1 << c for c in group.approved) for group in profile.groups]
    integer_model = _integer_scoring(profile, weights, k)
    if integer_model is not None:
        group_weights, cumulative, unit = integer_model
    else:
        group_weights = [float(group.weight) for group in profile.groups]
        cumulative = weights.cumulative(k)
        unit = None

    best_score = None
    optimal: list[Committee] = []
    for members in combinations(profile.candidates, k):
        committee_mask = sum(1 << c for c in members)
        score = 0
        for weight, mask in zip(group_weights, masks, strict=True):
            score += weight * cumulative[(mask & committee_mask).bit_count()]
        if best_score is None or score > best_score:
            best_score = score
            optimal = [frozenset(members)]
        elif score == best_score:
            optimal.append(frozenset(members))

    winner = policy.choose_committee(optimal)
    final_score: Weight = best_score * unit if unit is not None else float(best_score)
    return ThieleOutcome(
        committee=winner,
        score=final_score,
        optimal=tuple(sorted(optimal, key=sorted)) if exhaustive else None,
    )


def pav(
    profile: ApprovalProfile,
    k: int,
    tie_break: TieBreak | None = None,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> Committee:
    """Proportional Approval Voting: the ``1/i`` Thiele rule."""
    return thiele_exact(profile, LambdaWeights.pav(), k, tie_break, budget).committee
