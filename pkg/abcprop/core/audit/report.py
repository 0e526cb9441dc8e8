"""Proportionality and efficiency audit of a concrete committee."""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import pandas as pd

from abcprop.core.audit.groups import (
    DEFAULT_SEED_GROUPS,
    CohesiveGroup,
    cohesive_groups,
    group_satisfactions,
    large_threshold,
    least_satisfied_subgroup,
)
from abcprop.core.model.profile import ApprovalProfile, VoterGroup
from abcprop.core.utils.errors import InvalidInputError
from abcprop.core.utils.logging import get_logger
from abcprop.core.utils.numbers import format_value

logger = get_logger(__name__)


def avg_satisfaction(
    profile: ApprovalProfile, voters: VoterGroup, committee: Iterable[int]
) -> Fraction:
    """
    Weighted mean number of committee members approved by the voters in ``voters``.

    Args:
        profile: Approval profile.
        voters: Non-empty voter group.
        committee: Committee members.

    Returns:
        ``sat_V(A, W)`` as an exact rational.
    """
    voters.validate(profile)
    if voters.weight <= 0:
        raise InvalidInputError("cannot average over an empty voter group.")
    satisfactions = group_satisfactions(profile, committee)
    total = sum((weight * satisfactions[index] for index, weight in voters.shares), Fraction(0))
    return total / voters.weight


@dataclass(frozen=True)
class GroupRecord:
    """One inspected group for one ``(ell, threshold)`` query."""

    ell: int
    threshold: Fraction
    group: CohesiveGroup
    avg_satisfaction: Fraction
    worst_satisfaction: Fraction | None
    worst_subgroup: VoterGroup | None

    @property
    def violated(self) -> bool:
        return self.worst_satisfaction is not None and self.worst_satisfaction < self.threshold

    @property
    def shortfall(self) -> Fraction:
        if self.worst_satisfaction is None:
            return Fraction(0)
        return self.threshold - self.worst_satisfaction


@dataclass(frozen=True)
class AuditReport:
    """
    Result of auditing a committee against a family of guarantee queries.

    ``query_minimums`` maps each ``(ell, threshold)`` to the smallest satisfaction found over
    ell-large subgroups of the inspected groups (``None`` when no group qualified). The search is
    restricted to anchors built from at most ``seed_groups`` approval sets.
    """

    k: int
    committee: frozenset[int]
    records: tuple[GroupRecord, ...]
    query_minimums: dict[tuple[int, Fraction], Fraction | None]
    worst_violation: GroupRecord | None
    utilitarian_ratio: Fraction
    seed_groups: int

    def to_frame(self, exact: bool = False, digits: int = 6) -> pd.DataFrame:
        """One row per inspected group and query."""
        rows = []
        for record in self.records:
            worst = record.worst_satisfaction
            rows.append(
                {
                    "ell": record.ell,
                    "threshold": format_value(record.threshold, exact, digits),
                    "common_candidates": " ".join(str(c) for c in sorted(record.group.common)),
                    "common_count": len(record.group.common),
                    "weight": format_value(record.group.weight, exact, digits),
                    "large": record.group.is_large,
                    "avg_satisfaction": format_value(record.avg_satisfaction, exact, digits),
                    "worst_satisfaction": (
                        "" if worst is None else format_value(worst, exact, digits)
                    ),
                    "violated": record.violated,
                    "source": record.group.source,
                }
            )
        columns = [
            "ell",
            "threshold",
            "common_candidates",
            "common_count",
            "weight",
            "large",
            "avg_satisfaction",
            "worst_satisfaction",
            "violated",
            "source",
        ]
        return pd.DataFrame(rows, columns=columns)

    def to_csv(self, exact: bool = False, digits: int = 6) -> str:
        """CSV rendering of :meth:`to_frame`."""
        return self.to_frame(exact=exact, digits=digits).to_csv(index=False, lineterminator="\n")


def top_k_by_approvals(profile: ApprovalProfile, k: int) -> frozenset[int]:
    """Approval-score maximizer: ``k`` candidates with the largest approver weight."""
    ranked = sorted(profile.candidates, key=lambda c: (-profile.approver_weight(c), c))
    return frozenset(ranked[:k])


def approval_score(profile: ApprovalProfile, committee: Iterable[int]) -> Fraction:
    """Total number of approvals received by committee members."""
    return sum((profile.approver_weight(c) for c in set(committee)), Fraction(0))


def utilitarian_ratio(profile: ApprovalProfile, committee: Iterable[int], k: int) -> Fraction:
    """
    Approval score of ``committee`` relative to the best size-``k`` committee.

    Args:
        profile: Approval profile.
        committee: Committee members.
        k: Committee size.

    Returns:
        Ratio in ``[0, 1]``; ``1`` when no committee receives any approval.
    """
    members = profile.validate_committee(committee, k)
    best = approval_score(profile, top_k_by_approvals(profile, k))
    if best == 0:
        return Fraction(1)
    return approval_score(profile, members) / best


def empirical_prop_degree(
    profile: ApprovalProfile,
    committee: Iterable[int],
    k: int,
    queries: Sequence[tuple[int, Fraction | int]],
    seed_groups: int = DEFAULT_SEED_GROUPS,
    extra_groups: Sequence[VoterGroup] = (),
) -> AuditReport:
    """
    Falsification audit of proportionality guarantees on one committee.

    For each query ``(ell, g)`` every found group with at least ``g`` common candidates is
    inspected; when it is ell-large its least satisfied ell-large subgroup is compared with
    ``g``. A violation disproves that ``g`` is a guarantee for the rule that produced the
    committee; absence of violations proves nothing universal.

    Args:
        profile: Approval profile.
        committee: Audited committee.
        k: Committee size.
        queries: ``(ell, threshold)`` pairs.
        seed_groups: Search bound for anchors.
        extra_groups: Additional user-supplied groups.

    Returns:
        Audit report.
    """
    members = profile.validate_committee(committee, k)
    satisfactions = group_satisfactions(profile, members)
    records: list[GroupRecord] = []
    minimums: dict[tuple[int, Fraction], Fraction | None] = {}

    for ell, raw_threshold in queries:
        threshold = Fraction(raw_threshold)
        quota = large_threshold(profile, ell, k)
        minimum: Fraction | None = None
        for group in cohesive_groups(profile, k, ell, threshold, seed_groups, extra_groups):
            average = avg_satisfaction(profile, group.voters, members)
            subgroup = least_satisfied_subgroup(group.voters, satisfactions, quota)
            worst = (
                avg_satisfaction(profile, subgroup, members) if subgroup is not None else None
            )
            records.append(GroupRecord(ell, threshold, group, average, worst, subgroup))
            if worst is not None and (minimum is None or worst < minimum):
                minimum = worst
        minimums[(ell, threshold)] = minimum

    violations = [record for record in records if record.violated]
    worst_violation = max(violations, key=lambda r: r.shortfall) if violations else None
    if worst_violation is not None:
        logger.info(
            "Guarantee violated: ell=%d threshold=%s satisfaction=%s",
            worst_violation.ell,
            worst_violation.threshold,
            worst_violation.worst_satisfaction,
        )
    return AuditReport(
        k=k,
        committee=members,
        records=tuple(records),
        query_minimums=minimums,
        worst_violation=worst_violation,
        utilitarian_ratio=utilitarian_ratio(profile, members, k),
        seed_groups=seed_groups,
    )


@dataclass(frozen=True)
class EjrResult:
    """Outcome of an (alpha-approximate) EJR check."""

    satisfied: bool
    ell: int | None = None
    common: frozenset[int] | None = None
    witness: VoterGroup | None = None


def check_ejr(
    profile: ApprovalProfile,
    committee: Iterable[int],
    k: int,
    alpha: Fraction | int = 1,
    seed_groups: int = DEFAULT_SEED_GROUPS,
    extra_groups: Sequence[VoterGroup] = (),
) -> EjrResult:
    """
    Check alpha-EJR over the desk-scale group search.

    A violation is an ell-large group commonly approving ``ell`` candidates in which every voter
    has fewer than ``ceil(alpha * ell)`` representatives. The witness consists of the least
    satisfied such voters, trimmed to weight exactly ``ell * n / k``.

    Args:
        profile: Approval profile.
        committee: Committee members.
        k: Committee size.
        alpha: Approximation factor.
        seed_groups: Search bound for anchors.
        extra_groups: Additional user-supplied groups.

    Returns:
        Satisfaction flag and, on failure, the witness.
    """
    members = profile.validate_committee(committee, k)
    satisfactions = group_satisfactions(profile, members)
    factor = Fraction(alpha)
    for ell in range(1, k + 1):
        required = math.ceil(factor * ell)
        quota = large_threshold(profile, ell, k)
        for group in cohesive_groups(profile, k, ell, ell, seed_groups, extra_groups):
            unhappy = {
                index: weight
                for index, weight in group.voters.shares
                if satisfactions[index] < required
            }
            if not unhappy or sum(unhappy.values(), Fraction(0)) < quota:
                continue
            low_voters = VoterGroup.from_mapping(unhappy)
            witness = least_satisfied_subgroup(low_voters, satisfactions, quota)
            return EjrResult(satisfied=False, ell=ell, common=group.common, witness=witness)
    return EjrResult(satisfied=True)
