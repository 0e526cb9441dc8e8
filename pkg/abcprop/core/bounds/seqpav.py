"""Sequential PAV: last-step gain and the degree bounds it implies."""

from __future__ import annotations

from fractions import Fraction

from abcprop.core.bounds.types import GuaranteeReport
from abcprop.core.model.profile import ApprovalProfile
from abcprop.core.rules.sequential import max_last_step_gain, seq_pav
from abcprop.core.rules.thiele import DEFAULT_ENUMERATION_BUDGET
from abcprop.core.rules.ties import TieBreak
from abcprop.core.rules.weights import LambdaWeights
from abcprop.core.utils.errors import InvalidInputError


def seqpav_degree_from_h(
    ell: int, k: int | None, h: Fraction | float
) -> tuple[GuaranteeReport, GuaranteeReport]:
    """
    Convert ``h = k * Delta(k)`` into the degree bounds ``(ell/h - 1, ell/h)``.

    Args:
        ell: Group largeness.
        k: Committee size the bound was computed for (informational).
        h: Worst-case normalized last-step gain, positive.

    Returns:
        ``(lower, upper)`` reports.
    """
    if h <= 0:
        raise InvalidInputError(f"h must be positive, got {h}.")
    if ell < 1:
        raise InvalidInputError(f"ell must be >= 1, got {ell}.")
    ratio = Fraction(ell) / h if isinstance(h, Fraction) else ell / float(h)
    lower = GuaranteeReport(rule="seq-pav", ell=ell, k=k, kind="lower", value=ratio - 1)
    upper = GuaranteeReport(rule="seq-pav", ell=ell, k=k, kind="upper", value=ratio)
    return lower, upper


def seqpav_delta(
    profile: ApprovalProfile,
    k: int,
    tie_break: TieBreak | None = None,
    exhaustive: bool = False,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> Fraction:
    """
    Last-step marginal PAV gain per unit of voter weight.

    Args:
        profile: Approval profile.
        k: Committee size, ``k >= 1``.
        tie_break: Tie resolution of the single traced run.
        exhaustive: Maximize over every tie-resolution branch instead.
        budget: Partial-committee budget for the exhaustive search.

    Returns:
        ``Delta(profile, k)``.
    """
    if k < 1:
        raise InvalidInputError("k must be >= 1 to have a last step.")
    if exhaustive:
        return Fraction(max_last_step_gain(profile, LambdaWeights.pav(), k, budget))
    _, trace = seq_pav(profile, k, tie_break)
    return Fraction(trace.steps[-1].value)
