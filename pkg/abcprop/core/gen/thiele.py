"""Worst-case instances for lambda-Thiele rules."""

from __future__ import annotations

from fractions import Fraction

from abcprop.core.bounds.thiele import thiele_efficiency_upper, thiele_upper
from abcprop.core.gen.instance import InstanceSpec
from abcprop.core.model.profile import ApprovalProfile, VoterGroup
from abcprop.core.rules.weights import LambdaWeights
from abcprop.core.utils.errors import HypothesisError, InvalidInputError

DEFAULT_MAX_DENOMINATOR = 10**6


def _arc_segments(
    circumference: Fraction, arcs: list[tuple[Fraction, Fraction]]
) -> list[tuple[Fraction, frozenset[int]]]:
    """
    Cut a circle of voters into maximal segments with a fixed set of covering arcs.

    Args:
        circumference: Total weight on the circle.
        arcs: ``(start, length)`` per arc; arcs wrap around.

    Returns:
        ``(weight, covering arc indices)`` per segment, in circle order.
    """
    cuts = {Fraction(0)}
    for start, length in arcs:
        if length < circumference:
            cuts.add(start % circumference)
            cuts.add((start + length) % circumference)
    points = sorted(cuts) + [circumference]
    segments = []
    for left, right in zip(points, points[1:], strict=False):
        if right <= left:
            continue
        middle = (left + right) / 2
        covering = frozenset(
            index
            for index, (start, length) in enumerate(arcs)
            if length >= circumference or (middle - start) % circumference < length
        )
        segments.append((right - left, covering))
    return segments


def gen_thiele_upper_witness(
    weights: LambdaWeights,
    ell: int,
    k: int,
    n: int,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
) -> tuple[ApprovalProfile, InstanceSpec]:
    """
    Profile on which the optimal lambda-Thiele committee under-represents an ell-large group.

    ``V`` (weight ``n*ell/k``) approves ``B = 1..k``. Candidate ``d_i = k + i`` is approved by
    consecutive runs of ``|V|x/k`` voters of ``V`` and ``|V'|y/k`` voters of the rest ``V'``,
    each run starting where the previous one ended; the run of ``d_k`` inside ``V`` loses one
    unit of weight. Here ``x`` is :func:`thiele_upper` and ``y`` maximizes ``i * lambda(i+1)``.

    Args:
        weights: Thiele weights.
        ell: Group largeness, ``ell < k``.
        k: Committee size.
        n: Number of voters, divisible by ``k**2``.
        max_denominator: Rationalization cap for ``x``.

    Returns:
        Profile and spec; ``target`` is ``D``.
    """
    if not 1 <= ell < k:
        raise HypothesisError(f"need 1 <= ell < k, got ell={ell}, k={k}.")
    if n < 1 or n % (k * k):
        raise HypothesisError(f"n={n} must be a positive multiple of k^2={k * k}.")
    bound = thiele_upper(weights, ell, k)
    x = Fraction(bound.value).limit_denominator(max_denominator)
    y = max(range(1, k + 1), key=lambda i: i * float(weights.weight(i + 1)))

    v_weight = Fraction(n * ell, k)
    rest_weight = Fraction(n) - v_weight
    v_run = v_weight * x / k
    rest_run = rest_weight * y / k
    if v_run < 1:
        raise HypothesisError(f"run length {v_run} inside V is shorter than one voter.")
    v_arcs = [(i * v_run, v_run) for i in range(k)]
    v_arcs[-1] = (v_arcs[-1][0], v_run - 1)
    rest_arcs = [(i * rest_run, rest_run) for i in range(k)]

    b_block = list(range(1, k + 1))
    groups: list[tuple[Fraction, list[int]]] = []
    for weight, covering in _arc_segments(v_weight, v_arcs):
        groups.append((weight, b_block + [k + 1 + i for i in sorted(covering)]))
    for weight, covering in _arc_segments(rest_weight, rest_arcs):
        groups.append((weight, [k + 1 + i for i in sorted(covering)]))

    profile = ApprovalProfile.build(2 * k, groups)
    v_indices = [i for i, group in enumerate(profile.groups) if set(b_block) <= group.approved]
    spec = InstanceSpec(
        family="thiele-upper",
        params={"lambda": weights.tag, "ell": ell, "k": k, "n": n, "x": x, "y": y},
        n=Fraction(n),
        m=2 * k,
        k=k,
        voters=VoterGroup.whole_groups(profile, v_indices),
        predicted=x,
        target=frozenset(range(k + 1, 2 * k + 1)),
        extra={"V": v_weight, "V_rest": rest_weight},
    )
    return profile, spec


def gen_efficiency_witness(
    weights: LambdaWeights,
    k: int,
    voters_per_block: Fraction | int,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
) -> tuple[ApprovalProfile, InstanceSpec]:
    """
    Profile on which the optimal lambda-Thiele committee has poor approval score.

    ``V`` approves ``B = 1..k``; the others form ``k`` blocks of ``voters_per_block`` and block
    ``i`` approves only ``k + i``. ``|V|`` solves ``|V| * k * alpha = n - |V|`` with ``alpha``
    from :func:`thiele_efficiency_upper`.

    Args:
        weights: Thiele weights.
        k: Committee size.
        voters_per_block: Weight of each single-candidate block.
        max_denominator: Rationalization cap for ``alpha``.

    Returns:
        Profile and spec; ``predicted`` is ``2 alpha - alpha^2`` and ``target`` is ``D``.
    """
    if k < 1:
        raise InvalidInputError(f"need k >= 1, got {k}.")
    block = Fraction(voters_per_block)
    if block <= 0:
        raise InvalidInputError("voters_per_block must be positive.")
    alpha = Fraction(thiele_efficiency_upper(weights, k).alpha).limit_denominator(
        max_denominator
    )
    v_weight = block / alpha
    b_block = list(range(1, k + 1))
    groups = [(v_weight, b_block)] + [(block, [k + 1 + i]) for i in range(k)]
    profile = ApprovalProfile.build(2 * k, groups)
    spec = InstanceSpec(
        family="efficiency",
        params={"lambda": weights.tag, "k": k, "voters_per_block": block, "alpha": alpha},
        n=v_weight + block * k,
        m=2 * k,
        k=k,
        voters=VoterGroup.whole_groups(profile, [0]),
        predicted=2 * alpha - alpha * alpha,
        target=frozenset(range(k + 1, 2 * k + 1)),
        extra={"max_from_B": alpha * k},
    )
    return profile, spec
