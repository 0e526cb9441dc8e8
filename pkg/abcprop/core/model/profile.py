"""Approval profiles, committees, and voter sub-populations."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from abcprop.core.utils.errors import InvalidInputError

Committee = frozenset[int]


@dataclass(frozen=True)
class ApprovalGroup:
    """``weight`` identical voters sharing one approval set."""

    weight: Fraction
    approved: frozenset[int]

    def sorted_approved(self) -> tuple[int, ...]:
        """Return the approval set in ascending candidate order."""
        return tuple(sorted(self.approved))


@dataclass(frozen=True)
class ApprovalProfile:
    """
    Weighted approval profile over candidates ``1..num_candidates``.

    Construct through :meth:`build` to obtain the normalized form (duplicate approval sets
    merged in first-occurrence order). Direct construction keeps duplicates, which the rules
    accept as well.
    """

    num_candidates: int
    groups: tuple[ApprovalGroup, ...]

    def __post_init__(self) -> None:
        if self.num_candidates < 1:
            raise InvalidInputError("num_candidates must be >= 1.")
        for index, group in enumerate(self.groups):
            if group.weight <= 0:
                raise InvalidInputError(f"group {index} has non-positive weight {group.weight}.")
            for candidate in group.approved:
                if not 1 <= candidate <= self.num_candidates:
                    raise InvalidInputError(
                        f"group {index}: candidate index out of range: {candidate} "
                        f"(m={self.num_candidates})."
                    )

    @classmethod
    def build(
        cls,
        num_candidates: int,
        groups: Iterable[tuple[Fraction | int, Iterable[int]]],
        merge_duplicates: bool = True,
    ) -> ApprovalProfile:
        """
        Build a profile from ``(weight, approval set)`` pairs.

        Args:
            num_candidates: Number of candidates ``m``.
            groups: Weighted approval sets.
            merge_duplicates: Merge identical approval sets, summing weights.

        Returns:
            Validated profile.
        """
        built: list[ApprovalGroup] = []
        position: dict[frozenset[int], int] = {}
        for weight, approved in groups:
            approved_set = frozenset(int(candidate) for candidate in approved)
            group_weight = Fraction(weight)
            if merge_duplicates and approved_set in position:
                existing = built[position[approved_set]]
                built[position[approved_set]] = ApprovalGroup(
                    existing.weight + group_weight, approved_set
                )
                continue
            position.setdefault(approved_set, len(built))
            built.append(ApprovalGroup(group_weight, approved_set))
        return cls(num_candidates=num_candidates, groups=tuple(built))

    def normalized(self) -> ApprovalProfile:
        """Return the profile with duplicate approval sets merged."""
        return ApprovalProfile.build(
            self.num_candidates, ((group.weight, group.approved) for group in self.groups)
        )

    def scaled(self, factor: Fraction | int) -> ApprovalProfile:
        """Return the profile with every weight multiplied by ``factor``."""
        multiplier = Fraction(factor)
        if multiplier <= 0:
            raise InvalidInputError("scale factor must be > 0.")
        return ApprovalProfile(
            self.num_candidates,
            tuple(ApprovalGroup(g.weight * multiplier, g.approved) for g in self.groups),
        )

    @property
    def total_weight(self) -> Fraction:
        """Total voter weight ``n``."""
        return sum((group.weight for group in self.groups), Fraction(0))

    @property
    def candidates(self) -> range:
        """Candidate indices ``1..m``."""
        return range(1, self.num_candidates + 1)

    def approver_weight(self, candidate: int) -> Fraction:
        """Weight of the voters approving ``candidate`` (``|N(c)|``)."""
        return sum(
            (group.weight for group in self.groups if candidate in group.approved), Fraction(0)
        )

    def approver_groups(self, candidate: int) -> tuple[int, ...]:
        """Indices of the groups approving ``candidate``."""
        return tuple(i for i, group in enumerate(self.groups) if candidate in group.approved)

    def validate_committee(self, committee: Iterable[int], k: int | None = None) -> Committee:
        """
        Check committee membership against the candidate range.

        Args:
            committee: Candidate indices.
            k: Expected committee size, when known.

        Returns:
            The committee as a frozenset.
        """
        members = frozenset(int(candidate) for candidate in committee)
        for candidate in members:
            if not 1 <= candidate <= self.num_candidates:
                raise InvalidInputError(
                    f"committee member out of range: {candidate} (m={self.num_candidates})."
                )
        if k is not None and len(members) != k:
            raise InvalidInputError(f"committee has {len(members)} members, expected k={k}.")
        return members


@dataclass(frozen=True)
class VoterGroup:
    """A measurable sub-population: profile group index -> sub-weight."""

    shares: tuple[tuple[int, Fraction], ...]

    @classmethod
    def from_mapping(cls, shares: Mapping[int, Fraction | int]) -> VoterGroup:
        """Build from a mapping, dropping zero shares and ordering by group index."""
        cleaned = tuple(
            (int(index), Fraction(weight))
            for index, weight in sorted(shares.items())
            if Fraction(weight) != 0
        )
        if not cleaned:
            raise InvalidInputError("voter group must have positive total weight.")
        for index, weight in cleaned:
            if weight < 0:
                raise InvalidInputError(f"negative sub-weight for group {index}.")
        return cls(shares=cleaned)

    @classmethod
    def whole_groups(cls, profile: ApprovalProfile, indices: Sequence[int]) -> VoterGroup:
        """The full weight of the listed profile groups."""
        return cls.from_mapping({index: profile.groups[index].weight for index in indices})

    @property
    def weight(self) -> Fraction:
        """``|V|``."""
        return sum((weight for _, weight in self.shares), Fraction(0))

    @property
    def group_indices(self) -> tuple[int, ...]:
        return tuple(index for index, _ in self.shares)

    def validate(self, profile: ApprovalProfile) -> None:
        """Check indices and sub-weights against ``profile``."""
        for index, weight in self.shares:
            if not 0 <= index < len(profile.groups):
                raise InvalidInputError(f"voter group references unknown group {index}.")
            if weight > profile.groups[index].weight:
                raise InvalidInputError(
                    f"sub-weight {weight} exceeds weight of group {index} "
                    f"({profile.groups[index].weight})."
                )

    def common_candidates(self, profile: ApprovalProfile) -> frozenset[int]:
        """Candidates approved by every voter in the group."""
        approval_sets = [profile.groups[index].approved for index in self.group_indices]
        return frozenset.intersection(*approval_sets)

    def is_large(self, profile: ApprovalProfile, ell: int, k: int) -> bool:
        """``|V| >= ell * n / k`` (exact)."""
        return self.weight * k >= ell * profile.total_weight
