"""Phragmén's rules: the credit process, the load process, and the maximal rule."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from abcprop.core.model.profile import ApprovalProfile, Committee
from abcprop.core.rules.thiele import DEFAULT_ENUMERATION_BUDGET, check_enumeration_budget
from abcprop.core.rules.ties import TieBreak
from abcprop.core.rules.trace import CreditState, ElectionTrace, TraceStep
from abcprop.core.utils.errors import InvalidInputError, StallError
from abcprop.core.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class MaxPhragmenOutcome:
    """All committees attaining the minimal maximal load, and that load."""

    committees: tuple[Committee, ...]
    max_load: Fraction


def _approvers(profile: ApprovalProfile) -> dict[int, tuple[int, ...]]:
    return {c: profile.approver_groups(c) for c in profile.candidates}


def _check_sequential_input(profile: ApprovalProfile, k: int) -> None:
    if not 0 <= k <= profile.num_candidates:
        raise InvalidInputError(
            f"committee size k={k} must lie in [0, m={profile.num_candidates}]."
        )
    if profile.total_weight <= 0:
        raise InvalidInputError("profile has no voters.")


def seq_phragmen_credit(
    profile: ApprovalProfile, k: int, tie_break: TieBreak | None = None
) -> tuple[Committee, ElectionTrace]:
    """
    Money-based sequential Phragmén.

    Every unit of voter weight earns one credit per time unit and a candidate costs ``n``
    credits. At each event the earliest-electable candidate is bought by its approvers, whose
    balances reset to zero. Simultaneously electable candidates are bought one at a time in
    tie-break order, re-evaluating electability after each reset.

    Args:
        profile: Approval profile.
        k: Committee size.
        tie_break: Resolution of simultaneous electability.

    Returns:
        The committee and a trace of purchase times with per-group credit snapshots.
    """
    policy = tie_break or TieBreak.lexmin()
    _check_sequential_input(profile, k)
    price = profile.total_weight
    approvers = _approvers(profile)
    weights = [group.weight for group in profile.groups]
    credits = [Fraction(0)] * len(weights)
    time = Fraction(0)
    selected: set[int] = set()
    steps: list[TraceStep] = []

    for step in range(1, k + 1):
        event_times: dict[int, Fraction] = {}
        for candidate, groups in approvers.items():
            if candidate in selected or not groups:
                continue
            support = sum((weights[g] for g in groups), Fraction(0))
            balance = sum((weights[g] * credits[g] for g in groups), Fraction(0))
            event_times[candidate] = time + max(price - balance, Fraction(0)) / support
        if not event_times:
            raise StallError("no remaining candidate has an approver", step)

        next_time = min(event_times.values())
        tied = tuple(sorted(c for c, t in event_times.items() if t == next_time))
        chosen = policy.choose(tied)
        elapsed = next_time - time
        credits = [balance + elapsed for balance in credits]
        for g in approvers[chosen]:
            credits[g] = Fraction(0)
        time = next_time
        selected.add(chosen)
        logger.debug("credit process step %d: bought %d at t=%s tied=%s", step, chosen, time, tied)
        steps.append(
            TraceStep(
                chosen=chosen,
                value=time,
                tie_set=tied,
                state=CreditState(time=time, credits=tuple(credits)),
            )
        )

    return frozenset(selected), ElectionTrace(rule="seq-phragmen", steps=tuple(steps))


def seq_phragmen_load(
    profile: ApprovalProfile, k: int, tie_break: TieBreak | None = None
) -> tuple[Committee, ElectionTrace]:
    """
    Load-balancing sequential Phragmén.

    Each elected candidate carries one unit of load shared by its approvers so that the
    maximal voter load after the step is as small as possible; for candidate ``c`` the
    approvers are levelled to ``(1 + sum_{g in N(c)} w_g l_g) / |N(c)|``.

    Args:
        profile: Approval profile.
        k: Committee size.
        tie_break: Resolution of equal maximal loads.

    Returns:
        The committee and a trace with the new maximal load and per-group loads after each step.
    """
    policy = tie_break or TieBreak.lexmin()
    _check_sequential_input(profile, k)
    approvers = _approvers(profile)
    weights = [group.weight for group in profile.groups]
    loads = [Fraction(0)] * len(weights)
    selected: set[int] = set()
    steps: list[TraceStep] = []

    for step in range(1, k + 1):
        current_max = max(loads, default=Fraction(0))
        levels: dict[int, Fraction] = {}
        for candidate, groups in approvers.items():
            if candidate in selected or not groups:
                continue
            support = sum((weights[g] for g in groups), Fraction(0))
            carried = sum((weights[g] * loads[g] for g in groups), Fraction(0))
            levels[candidate] = (1 + carried) / support
        if not levels:
            raise StallError("no remaining candidate has an approver", step)

        objective = {c: max(current_max, level) for c, level in levels.items()}
        best = min(objective.values())
        tied = tuple(sorted(c for c, value in objective.items() if value == best))
        chosen = policy.choose(tied)
        for g in approvers[chosen]:
            loads[g] = levels[chosen]
        selected.add(chosen)
        logger.debug("load process step %d: chose %d max-load=%s tied=%s", step, chosen, best, tied)
        steps.append(TraceStep(chosen=chosen, value=best, tie_set=tied, loads=tuple(loads)))

    return frozenset(selected), ElectionTrace(rule="seq-phragmen-load", steps=tuple(steps))


def optimal_max_load(profile: ApprovalProfile, committee: Committee) -> Fraction | None:
    """
    Minimal achievable maximal voter load for a fixed committee.

    Each member's unit load may be split arbitrarily among its approvers. By the max-flow
    min-cut theorem a per-voter cap ``T`` is feasible iff ``|S| <= T * |N(S)|`` for every
    ``S`` within the committee, so the optimum is ``max_S |S| / |N(S)|``.

    The ``2^|committee|`` subsets are enumerated. :func:`max_phragmen` calls this once per
    committee under the enumeration budget, which keeps committees small.

    Args:
        profile: Approval profile.
        committee: Committee members.

    Returns:
        The optimal maximal load, or ``None`` when some member has no approver.
    """
    members = sorted(committee)
    group_sets = {c: frozenset(profile.approver_groups(c)) for c in members}
    if any(not groups for groups in group_sets.values()):
        return None
    best = Fraction(0)
    for size in range(1, len(members) + 1):
        for subset in combinations(members, size):
            covered = frozenset().union(*(group_sets[c] for c in subset))
            covered_weight = sum((profile.groups[g].weight for g in covered), Fraction(0))
            best = max(best, Fraction(size) / covered_weight)
    return best


def max_phragmen(
    profile: ApprovalProfile, k: int, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> MaxPhragmenOutcome:
    """
    Phragmén's maximal rule: committees minimizing the optimal maximal load.

    Args:
        profile: Approval profile.
        k: Committee size.
        budget: Maximum number of committees to enumerate.

    Returns:
        Every optimal committee (lexicographic order) and the optimal value.
    """
    count = check_enumeration_budget(profile.num_candidates, k, budget)
    logger.debug("max-Phragmén over %d committees of size %d", count, k)
    best: Fraction | None = None
    optimal: list[Committee] = []
    for members in combinations(profile.candidates, k):
        committee = frozenset(members)
        value = optimal_max_load(profile, committee)
        if value is None:
            continue
        if best is None or value < best:
            best = value
            optimal = [committee]
        elif value == best:
            optimal.append(committee)
    if best is None:
        raise InvalidInputError(f"fewer than k={k} candidates have approvers.")
    return MaxPhragmenOutcome(committees=tuple(optimal), max_load=best)
