"""D'Hondt divisor apportionment, the party-list oracle for proportional rules."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from fractions import Fraction

from abcprop.core.utils.errors import InvalidInputError


def dhondt_apportionment(party_weights: Sequence[Fraction | int], seats: int) -> tuple[int, ...]:
    """
    Allocate seats by highest averages with divisors ``1, 2, 3, ...``.

    Ties between equal quotients go to the lower party index.

    Args:
        party_weights: Positive vote weight per party.
        seats: Number of seats to allocate.

    Returns:
        Seat count per party.
    """
    if seats < 0:
        raise InvalidInputError("seats must be >= 0.")
    weights = [Fraction(weight) for weight in party_weights]
    if not weights or any(weight <= 0 for weight in weights):
        raise InvalidInputError("party weights must be positive and non-empty.")
    allocation = [0] * len(weights)
    for _ in range(seats):
        quotients = [weight / (won + 1) for weight, won in zip(weights, allocation, strict=True)]
        winner = max(range(len(weights)), key=lambda party: (quotients[party], -party))
        allocation[winner] += 1
    return tuple(allocation)


def seats_by_block(committee: Iterable[int], blocks: Sequence[Iterable[int]]) -> tuple[int, ...]:
    """Count committee members falling in each candidate block."""
    members = set(committee)
    return tuple(len(members.intersection(block)) for block in blocks)
