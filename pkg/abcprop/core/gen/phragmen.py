"""Worst-case instances for Phragmén's sequential and maximal rules."""

from __future__ import annotations

import math
from fractions import Fraction

from abcprop.core.bounds.phragmen import phragmen_upper
from abcprop.core.gen.instance import InstanceSpec
from abcprop.core.model.profile import ApprovalProfile, VoterGroup
from abcprop.core.utils.errors import HypothesisError, InvalidInputError


def gen_phragmen_hard(ell: int, k: int) -> tuple[ApprovalProfile, InstanceSpec]:
    """
    Profile on which sequential Phragmén leaves an ell-large group with few representatives.

    Candidates are ``b_1..b_k`` (``1..k``), ``c_1..c_k`` (``k+1..2k``) and ``d_1..d_ell``
    (``2k+1..2k+ell``). With ``x = 2(k - ell)/ell - 1`` and ``L = lcm(ell, x, k)`` there are
    ``n = Lk/ell`` voters: the first ``L`` (the group ``V``) approve all of ``D`` and are split
    into ``x`` segments cycling through the ``b`` candidates, the last ``L`` approve all of ``C``
    with segment ``q`` also approving ``b_1..b_(q-1)``, and everybody else approves all of ``B``.

    Args:
        ell: Group largeness, ``ell < k/2`` with ``ell | k``.
        k: Committee size.

    Returns:
        Profile and its spec; ``target`` is ``B | C`` for adversarial tie-breaking.
    """
    if ell < 1 or 2 * ell >= k:
        raise HypothesisError(f"need 1 <= ell < k/2, got ell={ell}, k={k}.")
    if k % ell:
        raise HypothesisError(f"need ell to divide k, got ell={ell}, k={k}.")
    x = 2 * (k - ell) // ell - 1
    if x <= 0:
        raise HypothesisError(f"construction parameter x={x} must be positive.")
    big_l = math.lcm(ell, x, k)
    n = Fraction(big_l * k, ell)
    segment = Fraction(big_l, x)

    b_block = list(range(1, k + 1))
    c_block = list(range(k + 1, 2 * k + 1))
    d_block = list(range(2 * k + 1, 2 * k + ell + 1))

    groups: list[tuple[Fraction, list[int]]] = []
    for s in range(x):
        cycled = [b for b in b_block if (b - 1) % x == s]
        groups.append((segment, cycled + d_block))
    middle = n - 2 * big_l
    if middle > 0:
        groups.append((middle, b_block))
    for q in range(1, x + 1):
        groups.append((segment, b_block[: q - 1] + c_block))

    profile = ApprovalProfile.build(2 * k + ell, groups)
    v_indices = [i for i, group in enumerate(profile.groups) if set(d_block) <= group.approved]
    spec = InstanceSpec(
        family="phragmen-hard",
        params={"ell": ell, "k": k, "x": x, "L": big_l},
        n=n,
        m=2 * k + ell,
        k=k,
        voters=VoterGroup.whole_groups(profile, v_indices),
        predicted=phragmen_upper(ell, k).value,
        target=frozenset(b_block + c_block),
        extra={"t": Fraction(k, k - ell)},
    )
    return profile, spec


def gen_maxphragmen_tie(
    k: int, voters_per_block: Fraction | int = 1, ell: int = 2
) -> tuple[ApprovalProfile, InstanceSpec]:
    """
    Profile where Phragmén's maximal rule may ignore ``k`` unanimously approved candidates.

    ``W1 = 1..k`` is approved by everybody; the voters form ``k`` equal blocks and block ``i``
    alone approves ``k + i`` (``W2``). Both committees reach the optimal maximal load ``k/n``.

    Args:
        k: Committee size, ``k >= 2``.
        voters_per_block: Weight of each block.
        ell: Number of blocks merged into the designated ell-large group.

    Returns:
        Profile and spec; ``target`` is ``W2`` and ``extra`` holds both committees.
    """
    if k < 2:
        raise InvalidInputError(f"need k >= 2, got {k}.")
    if not 1 <= ell <= k:
        raise InvalidInputError(f"need 1 <= ell <= k, got ell={ell}, k={k}.")
    block = Fraction(voters_per_block)
    if block <= 0:
        raise InvalidInputError("voters_per_block must be positive.")
    unanimous = list(range(1, k + 1))
    single = list(range(k + 1, 2 * k + 1))
    profile = ApprovalProfile.build(
        2 * k, [(block, unanimous + [single[i]]) for i in range(k)]
    )
    spec = InstanceSpec(
        family="maxphragmen-tie",
        params={"k": k, "voters_per_block": block, "ell": ell},
        n=block * k,
        m=2 * k,
        k=k,
        voters=VoterGroup.whole_groups(profile, list(range(ell))),
        predicted=Fraction(1),
        target=frozenset(single),
        extra={"W1": frozenset(unanimous), "W2": frozenset(single)},
    )
    return profile, spec
