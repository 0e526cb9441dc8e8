"""Amplifying a sequential-PAV profile with a large last-step gain into a degree witness."""

from __future__ import annotations

from fractions import Fraction

from abcprop.core.bounds.seqpav import seqpav_delta
from abcprop.core.gen.instance import InstanceSpec
from abcprop.core.model.profile import ApprovalProfile, VoterGroup
from abcprop.core.utils.errors import InvalidInputError


def gen_seqpav_hard(
    base: ApprovalProfile, k: int, copies: int, ell: int
) -> tuple[ApprovalProfile, InstanceSpec]:
    """
    Stack ``copies`` disjoint copies of ``base`` and add one fresh ell-large group.

    Copy ``r`` uses candidates ``r*m + 1 .. (r+1)*m``. The fresh group has weight
    ``y = L*n*ell / (L*k - ell)`` and approves ``ell`` new candidates; it is exactly ell-large for
    committee size ``L*k``. Sequential PAV fills the committee with copy candidates as long as
    their gains exceed the fresh group's.

    Args:
        base: Profile with a large last-step gain at committee size ``k``.
        k: Committee size for ``base``.
        copies: Number of copies ``L``.
        ell: Largeness of the fresh group.

    Returns:
        Profile and spec with committee size ``L*k``; ``predicted`` is ``ell / (k * Delta)``.
    """
    if copies < 1 or ell < 1:
        raise InvalidInputError("copies and ell must be >= 1.")
    if copies * k <= ell:
        raise InvalidInputError(f"need L*k > ell, got L={copies}, k={k}, ell={ell}.")
    m = base.num_candidates
    n = base.total_weight
    groups: list[tuple[Fraction, list[int]]] = []
    for copy in range(copies):
        offset = copy * m
        for group in base.groups:
            groups.append((group.weight, [c + offset for c in group.sorted_approved()]))
    fresh_weight = Fraction(copies) * n * ell / (copies * k - ell)
    fresh = list(range(copies * m + 1, copies * m + ell + 1))
    groups.append((fresh_weight, fresh))
    profile = ApprovalProfile.build(copies * m + ell, groups, merge_duplicates=False)

    delta = seqpav_delta(base, k)
    h = k * delta
    spec = InstanceSpec(
        family="seqpav-hard",
        params={"k": k, "L": copies, "ell": ell},
        n=copies * n + fresh_weight,
        m=copies * m + ell,
        k=copies * k,
        voters=VoterGroup.whole_groups(profile, [len(profile.groups) - 1]),
        predicted=Fraction(ell) / h if h else None,
        target=frozenset(range(1, copies * m + 1)),
        extra={"y": fresh_weight, "h": h},
    )
    return profile, spec
