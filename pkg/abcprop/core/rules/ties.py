"""Tie-breaking policies for candidates and committees."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str.__str__(self)

        @staticmethod
        def _generate_next_value_(name, start, count, last_values):
            return name.lower()

from abcprop.core.utils.errors import InvalidInputError


class TiePolicy(StrEnum):
    LEXMIN = "lexmin"
    LEXMAX = "lexmax"
    ADVERSARIAL = "adversarial"


@dataclass(frozen=True)
class TieBreak:
    """
    Total order used to resolve ties.

    The adversarial policy prefers tied candidates inside ``target`` (lowest index first) and
    falls back to the lowest index; for whole committees it prefers the largest overlap with
    ``target``, then the lexicographically smallest.
    """

    policy: TiePolicy = TiePolicy.LEXMIN
    target: frozenset[int] = frozenset()

    @classmethod
    def lexmin(cls) -> TieBreak:
        return cls(TiePolicy.LEXMIN)

    @classmethod
    def lexmax(cls) -> TieBreak:
        return cls(TiePolicy.LEXMAX)

    @classmethod
    def adversarial(cls, target: Iterable[int]) -> TieBreak:
        return cls(TiePolicy.ADVERSARIAL, frozenset(target))

    @classmethod
    def from_name(cls, name: str, target: Iterable[int] = ()) -> TieBreak:
        """Build a policy from its CLI name."""
        try:
            policy = TiePolicy(name.strip().lower())
        except ValueError as exc:
            raise InvalidInputError(
                f"unknown tie-breaking policy '{name}' (expected lexmin, lexmax, adversarial)."
            ) from exc
        targets = frozenset(target)
        if policy is TiePolicy.ADVERSARIAL and not targets:
            raise InvalidInputError("adversarial tie-breaking needs a target committee.")
        return cls(policy, targets)

    def choose(self, tied: Iterable[int]) -> int:
        """Pick one candidate from a non-empty tie set."""
        candidates = sorted(set(tied))
        if not candidates:
            raise InvalidInputError("cannot break ties in an empty set.")
        if self.policy is TiePolicy.LEXMAX:
            return candidates[-1]
        if self.policy is TiePolicy.ADVERSARIAL:
            preferred = [c for c in candidates if c in self.target]
            if preferred:
                return preferred[0]
        return candidates[0]

    def committee_key(self, committee: Iterable[int]) -> tuple:
        """Sort key under which the preferred committee is the minimum."""
        members = tuple(sorted(committee))
        if self.policy is TiePolicy.LEXMAX:
            return tuple(-member for member in members)
        if self.policy is TiePolicy.ADVERSARIAL:
            return (-len(self.target.intersection(members)), members)
        return members

    def choose_committee(self, committees: Iterable[frozenset[int]]) -> frozenset[int]:
        """Pick the preferred committee among equally good ones."""
        pool = list(committees)
        if not pool:
            raise InvalidInputError("cannot break ties among zero committees.")
        return min(pool, key=self.committee_key)
