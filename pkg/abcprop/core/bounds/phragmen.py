"""Closed-form bounds for Phragmén's rules."""

from __future__ import annotations

from fractions import Fraction

from abcprop.core.bounds.types import GuaranteeReport
from abcprop.core.utils.errors import HypothesisError


def phragmen_lower(ell: int) -> GuaranteeReport:
    """Sequential Phragmén guarantees ``(ell - 1) / 2`` for every ``k``."""
    if ell < 1:
        raise HypothesisError(f"ell must be >= 1, got {ell}.")
    return GuaranteeReport(
        rule="seq-phragmen", ell=ell, k=None, kind="lower", value=Fraction(ell - 1, 2)
    )


def phragmen_upper(ell: int, k: int) -> GuaranteeReport:
    """
    Upper bound ``(ell/2) * (2k - 2ell + 2) / (2k - 3ell)`` on sequential Phragmén's degree.

    Requires ``ell < k/2`` and ``ell | k``; the bound tends to ``ell / 2`` as ``k`` grows.

    Args:
        ell: Group largeness.
        k: Committee size.

    Returns:
        Upper-bound report.
    """
    if ell < 1 or 2 * ell >= k:
        raise HypothesisError(f"phragmen_upper requires 1 <= ell < k/2, got ell={ell}, k={k}.")
    if k % ell != 0:
        raise HypothesisError(f"phragmen_upper requires ell to divide k, got ell={ell}, k={k}.")
    value = Fraction(ell, 2) * Fraction(2 * k - 2 * ell + 2, 2 * k - 3 * ell)
    notes = [f"limit as k grows: {Fraction(ell, 2)}"]
    if ell == 1 and k == 10:
        notes.append("formula gives 10/17; the often quoted 0.625 at k=10 does not follow from it")
    return GuaranteeReport(
        rule="seq-phragmen", ell=ell, k=k, kind="upper", value=value, notes=tuple(notes)
    )


def maxphragmen_upper(ell: int = 1) -> GuaranteeReport:
    """Phragmén's maximal rule cannot guarantee more than one representative."""
    if ell < 1:
        raise HypothesisError(f"ell must be >= 1, got {ell}.")
    return GuaranteeReport(rule="max-phragmen", ell=ell, k=None, kind="upper", value=Fraction(1))
