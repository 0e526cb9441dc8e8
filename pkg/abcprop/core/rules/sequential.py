"""Sequential (greedy) lambda-Thiele rules."""

from __future__ import annotations

from fractions import Fraction

from abcprop.core.model.profile import ApprovalProfile, Committee
from abcprop.core.rules.ties import TieBreak
from abcprop.core.rules.trace import ElectionTrace, TraceStep
from abcprop.core.rules.weights import LambdaWeights, Weight
from abcprop.core.utils.errors import BudgetExceededError, InvalidInputError
from abcprop.core.utils.logging import get_logger

logger = get_logger(__name__)


def _marginal_gains(
    profile: ApprovalProfile,
    weights: LambdaWeights,
    selected: frozenset[int],
    satisfaction: list[int],
) -> dict[int, Weight]:
    gains: dict[int, Weight] = {}
    for candidate in profile.candidates:
        if candidate in selected:
            continue
        gain: Weight = Fraction(0)
        for group, count in zip(profile.groups, satisfaction, strict=True):
            if candidate in group.approved:
                gain += group.weight * weights.weight(count + 1)
        gains[candidate] = gain
    return gains


def _check_size(profile: ApprovalProfile, weights: LambdaWeights, k: int) -> None:
    if not 0 <= k <= profile.num_candidates:
        raise InvalidInputError(
            f"committee size k={k} must lie in [0, m={profile.num_candidates}]."
        )
    weights.require_length(k)
    if profile.total_weight <= 0:
        raise InvalidInputError("profile has no voters.")


def seq_thiele(
    profile: ApprovalProfile,
    weights: LambdaWeights,
    k: int,
    tie_break: TieBreak | None = None,
) -> tuple[Committee, ElectionTrace]:
    """
    Greedily add the candidate with the largest marginal lambda-score gain.

    Args:
        profile: Approval profile.
        weights: Thiele weights.
        k: Committee size.
        tie_break: Resolution of equal gains (lexicographic-min by default).

    Returns:
        The committee and a trace whose step values are gains divided by ``n``.
    """
    policy = tie_break or TieBreak.lexmin()
    _check_size(profile, weights, k)
    total_weight = profile.total_weight
    satisfaction = [0] * len(profile.groups)
    selected: frozenset[int] = frozenset()
    steps: list[TraceStep] = []

    for step in range(1, k + 1):
        gains = _marginal_gains(profile, weights, selected, satisfaction)
        best_gain = max(gains.values())
        tied = tuple(sorted(c for c, gain in gains.items() if gain == best_gain))
        chosen = policy.choose(tied)
        logger.debug("seq-thiele step %d: chose %d gain=%s tied=%s", step, chosen, best_gain, tied)
        selected = selected | {chosen}
        for index, group in enumerate(profile.groups):
            if chosen in group.approved:
                satisfaction[index] += 1
        steps.append(TraceStep(chosen=chosen, value=best_gain / total_weight, tie_set=tied))

    rule = "seq-pav" if weights.family == "pav" else f"seq-thiele[{weights.tag}]"
    return selected, ElectionTrace(rule=rule, steps=tuple(steps))


def seq_pav(
    profile: ApprovalProfile, k: int, tie_break: TieBreak | None = None
) -> tuple[Committee, ElectionTrace]:
    """Sequential PAV: greedy maximization of the harmonic score."""
    return seq_thiele(profile, LambdaWeights.pav(), k, tie_break)


def max_last_step_gain(
    profile: ApprovalProfile,
    weights: LambdaWeights,
    k: int,
    budget: int,
) -> Weight:
    """
    Largest last-step gain per unit weight over every tie-resolution branch.

    Branches reaching the same partial committee are merged, since later gains depend only on
    the set selected so far.

    Args:
        profile: Approval profile.
        weights: Thiele weights.
        k: Committee size, ``k >= 1``.
        budget: Maximum number of partial committees explored.

    Returns:
        Maximal normalized gain of the ``k``-th selection.
    """
    _check_size(profile, weights, k)
    if k < 1:
        raise InvalidInputError("k must be >= 1 to have a last step.")
    frontier: set[frozenset[int]] = {frozenset()}
    explored = 0
    for _ in range(k - 1):
        next_frontier: set[frozenset[int]] = set()
        for selected in frontier:
            gains = _marginal_gains(profile, weights, selected, _satisfaction(profile, selected))
            best_gain = max(gains.values())
            for candidate, gain in gains.items():
                if gain == best_gain:
                    next_frontier.add(selected | {candidate})
        explored += len(next_frontier)
        if explored > budget:
            raise BudgetExceededError("exploring seq-Thiele tie branches", explored, budget)
        frontier = next_frontier

    best: Weight | None = None
    for selected in frontier:
        gains = _marginal_gains(profile, weights, selected, _satisfaction(profile, selected))
        step_best = max(gains.values())
        if best is None or step_best > best:
            best = step_best
    assert best is not None
    return best / profile.total_weight


def _satisfaction(profile: ApprovalProfile, selected: frozenset[int]) -> list[int]:
    return [len(group.approved & selected) for group in profile.groups]
