"""Party-list profiles."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

from abcprop.core.model.profile import ApprovalProfile
from abcprop.core.utils.errors import InvalidInputError


def party_blocks(num_parties: int, candidates_per_party: int) -> list[list[int]]:
    """Candidate block of each party: party ``p`` gets ``p*c + 1 .. (p+1)*c``."""
    return [
        list(range(p * candidates_per_party + 1, (p + 1) * candidates_per_party + 1))
        for p in range(num_parties)
    ]


def gen_party_list(
    party_weights: Sequence[Fraction | int], candidates_per_party: int
) -> ApprovalProfile:
    """
    Each party's voters approve exactly its own disjoint block of candidates.

    Args:
        party_weights: Positive voter weight per party.
        candidates_per_party: Block size.

    Returns:
        Profile with ``len(party_weights) * candidates_per_party`` candidates.
    """
    if not party_weights:
        raise InvalidInputError("need at least one party.")
    if candidates_per_party < 1:
        raise InvalidInputError("candidates_per_party must be >= 1.")
    weights = [Fraction(weight) for weight in party_weights]
    if any(weight <= 0 for weight in weights):
        raise InvalidInputError("party weights must be positive.")
    blocks = party_blocks(len(weights), candidates_per_party)
    return ApprovalProfile.build(
        len(weights) * candidates_per_party, zip(weights, blocks, strict=True)
    )
