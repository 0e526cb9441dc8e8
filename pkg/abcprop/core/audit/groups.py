"""Cohesive-group search anchored on intersections of approval sets."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Literal

from abcprop.core.model.profile import ApprovalProfile, VoterGroup
from abcprop.core.utils.errors import InvalidInputError

DEFAULT_SEED_GROUPS = 3


@dataclass(frozen=True)
class CohesiveGroup:
    """Voters commonly approving ``common``."""

    common: frozenset[int]
    voters: VoterGroup
    is_large: bool
    source: Literal["intersection", "user"] = "intersection"

    @property
    def weight(self) -> Fraction:
        return self.voters.weight


def group_satisfactions(profile: ApprovalProfile, committee: Iterable[int]) -> list[int]:
    """``|A_g & W|`` for every profile group."""
    members = frozenset(committee)
    return [len(group.approved & members) for group in profile.groups]


def large_threshold(profile: ApprovalProfile, ell: int, k: int) -> Fraction:
    """Weight ``ell * n / k`` an ``ell``-large group must reach."""
    return Fraction(ell) * profile.total_weight / k


def _anchors(profile: ApprovalProfile, seed_groups: int) -> set[frozenset[int]]:
    anchors: set[frozenset[int]] = set()
    indices = range(len(profile.groups))
    for size in range(1, seed_groups + 1):
        for combo in combinations(indices, size):
            anchors.add(frozenset.intersection(*(profile.groups[i].approved for i in combo)))
    return anchors


def cohesive_groups(
    profile: ApprovalProfile,
    k: int,
    ell: int,
    threshold: Fraction | int,
    seed_groups: int = DEFAULT_SEED_GROUPS,
    extra_groups: Sequence[VoterGroup] = (),
) -> list[CohesiveGroup]:
    """
    Enumerate maximal candidate-anchored groups.

    Anchors are intersections of at most ``seed_groups`` approval sets; for each anchor ``T``
    with ``|T| >= threshold`` the group of all voters approving ``T`` is reported. User-supplied
    groups are appended as-is with their own common candidates.

    Args:
        profile: Approval profile.
        k: Committee size.
        ell: Largeness level.
        threshold: Minimal number of common candidates.
        seed_groups: Maximal number of approval sets intersected per anchor.
        extra_groups: Additional groups to inspect.

    Returns:
        Groups ordered by decreasing anchor size, then anchor.
    """
    if not 1 <= ell <= k:
        raise InvalidInputError(f"ell={ell} must lie in [1, k={k}].")
    if seed_groups < 1:
        raise InvalidInputError("seed_groups must be >= 1.")
    quota = large_threshold(profile, ell, k)

    found: list[CohesiveGroup] = []
    for anchor in _anchors(profile, seed_groups):
        if len(anchor) < threshold:
            continue
        members = [i for i, group in enumerate(profile.groups) if anchor <= group.approved]
        voters = VoterGroup.whole_groups(profile, members)
        found.append(CohesiveGroup(anchor, voters, voters.weight >= quota))
    found.sort(key=lambda group: (-len(group.common), sorted(group.common)))

    for voters in extra_groups:
        voters.validate(profile)
        common = voters.common_candidates(profile)
        if len(common) >= threshold:
            found.append(CohesiveGroup(common, voters, voters.weight >= quota, source="user"))
    return found


def voters_by_satisfaction(
    voters: VoterGroup, satisfactions: Sequence[int]
) -> list[tuple[int, Fraction]]:
    """Shares of ``voters`` ordered from least to most satisfied (ties by group index)."""
    return sorted(voters.shares, key=lambda share: (satisfactions[share[0]], share[0]))


def least_satisfied_subgroup(
    voters: VoterGroup,
    satisfactions: Sequence[int],
    weight: Fraction,
) -> VoterGroup | None:
    """
    Take the least satisfied voters of ``voters`` up to total ``weight``.

    Among all sub-populations of ``voters`` weighing at least ``weight`` this one has the
    smallest average satisfaction.

    Returns:
        The subgroup, or ``None`` when ``voters`` is lighter than ``weight``.
    """
    if voters.weight < weight:
        return None
    remaining = weight
    chosen: dict[int, Fraction] = {}
    for index, share in voters_by_satisfaction(voters, satisfactions):
        if remaining <= 0:
            break
        taken = min(share, remaining)
        chosen[index] = taken
        remaining -= taken
    return VoterGroup.from_mapping(chosen)
