"""Proportionality and efficiency bounds for lambda-Thiele rules."""

from __future__ import annotations

from collections.abc import Callable, Iterator

from abcprop.core.bounds.roots import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_TOLERANCE,
    bisect_root,
    first_with_sign,
)
from abcprop.core.bounds.types import EfficiencyReport, GuaranteeReport
from abcprop.core.rules.weights import LambdaWeights
from abcprop.core.utils.errors import HypothesisError, InvalidInputError
from abcprop.core.utils.logging import get_logger

logger = get_logger(__name__)


def _rule_tag(weights: LambdaWeights) -> str:
    return "pav" if weights.family == "pav" else f"thiele[{weights.tag}]"


def _check_weights(weights: LambdaWeights, k: int) -> None:
    weights.require_length(k + 1)
    if not weights.is_non_increasing(k):
        raise HypothesisError(f"{weights.tag} is not non-increasing on [1, {k + 1}].")
    if not weights.is_convex(k):
        raise HypothesisError(f"{weights.tag} is not convex on [1, {k + 1}].")


def _check_ell(ell: int, k: int) -> None:
    if k < 1 or not 1 <= ell <= k:
        raise InvalidInputError(f"need 1 <= ell <= k, got ell={ell}, k={k}.")


def _scaled_max(weights: LambdaWeights, k: int, shift: int) -> float:
    """``max over x in [k] of x * lambda(x + shift)``."""
    return max(x * float(weights.weight(x + shift)) for x in range(1, k + 1))


def _descending_from(start: float, floor: float) -> Iterator[float]:
    """Points ``start, ...`` approaching ``floor`` from above (or going to minus infinity)."""
    if floor == float("-inf"):
        step = 1.0
        point = start
        while step < 1e12:
            yield point
            point = start - step
            step *= 2
        return
    gap = start - floor
    for exponent in range(0, 60):
        yield floor + gap / 2**exponent


def _solve_decreasing(
    fn: Callable[[float], float],
    start: float,
    floor: float,
    upper: float,
    tolerance: float,
    max_iterations: int,
) -> tuple[float, float]:
    lower = first_with_sign(fn, _descending_from(start, floor), positive=True)
    return bisect_root(fn, lower, upper, tolerance, max_iterations)


def thiele_guarantee(
    weights: LambdaWeights,
    ell: int,
    k: int,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> GuaranteeReport:
    """
    Proportionality degree guaranteed by the optimal lambda-Thiele rule.

    Solves ``(k - g) * lambda(1 + g) = (k - ell) / ell * max_x x * lambda(x)`` for ``g``.

    Args:
        weights: Non-increasing convex weights.
        ell: Group largeness.
        k: Committee size.
        tolerance: Residual tolerance.
        max_iterations: Bisection cap.

    Returns:
        Lower-bound report.
    """
    _check_ell(ell, k)
    _check_weights(weights, k)
    rule = _rule_tag(weights)
    if ell == k:
        return GuaranteeReport(rule=rule, ell=ell, k=k, kind="lower", value=float(k))

    target = (k - ell) / ell * _scaled_max(weights, k, 0)

    def defect(g: float) -> float:
        return (k - g) * weights.evaluate(1.0 + g) - target

    floor = weights.domain_lower - 1.0
    value, residual = _solve_decreasing(defect, 0.0, floor, float(k), tolerance, max_iterations)
    logger.debug("thiele guarantee %s ell=%d k=%d: %.12g", weights.tag, ell, k, value)
    notes: tuple[str, ...] = ()
    if value < 0:
        notes = ("negative root: the guarantee is vacuous, only a degree of 0 is certified",)
    return GuaranteeReport(
        rule=rule, ell=ell, k=k, kind="lower", value=value, residual=residual, notes=notes
    )


def thiele_upper(
    weights: LambdaWeights,
    ell: int,
    k: int,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> GuaranteeReport:
    """
    Upper bound on the optimal lambda-Thiele rule's proportionality degree.

    Any degree ``g`` must satisfy ``(k - g) * lambda(g) >= (k - ell) / ell * max_x x *
    lambda(x + 1)``; the equality point is returned.
    """
    _check_ell(ell, k)
    _check_weights(weights, k)
    rule = _rule_tag(weights)
    if ell == k:
        return GuaranteeReport(rule=rule, ell=ell, k=k, kind="upper", value=float(k))

    target = (k - ell) / ell * _scaled_max(weights, k, 1)

    def defect(g: float) -> float:
        return (k - g) * weights.evaluate(g) - target

    value, residual = _solve_decreasing(
        defect, 1.0, weights.domain_lower, float(k), tolerance, max_iterations
    )
    return GuaranteeReport(rule=rule, ell=ell, k=k, kind="upper", value=value, residual=residual)


def thiele_efficiency_lower(
    weights: LambdaWeights,
    k: int,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> EfficiencyReport:
    """
    Utilitarian efficiency guaranteed by the optimal lambda-Thiele rule.

    ``alpha`` solves ``alpha * lambda(1) = lambda(1 + k * alpha)`` and the guarantee is
    ``alpha / (1 + alpha)``.

    Args:
        weights: Non-increasing convex weights.
        k: Committee size.
        tolerance: Residual tolerance.
        max_iterations: Bisection cap.

    Returns:
        Efficiency report.
    """
    if k < 1:
        raise InvalidInputError(f"k must be >= 1, got {k}.")
    _check_weights(weights, k)
    first = weights.evaluate(1.0)

    def defect(alpha: float) -> float:
        return alpha * first - weights.evaluate(1.0 + k * alpha)

    alpha, residual = bisect_root(defect, 0.0, 1.0, tolerance, max_iterations)
    guarantee = alpha / (1.0 + alpha)
    if not guarantee > alpha - alpha * alpha:
        raise HypothesisError(
            f"efficiency guarantee {guarantee} does not exceed alpha - alpha^2 at alpha={alpha}."
        )
    return EfficiencyReport(
        lambda_tag=weights.tag,
        k=k,
        alpha=alpha,
        guarantee=guarantee,
        kind="lower",
        residual=residual,
    )


def thiele_efficiency_upper(
    weights: LambdaWeights,
    k: int,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> EfficiencyReport:
    """Efficiency upper bound ``2a - a^2`` where ``a * lambda(1) = lambda(k * a)``."""
    if k < 1:
        raise InvalidInputError(f"k must be >= 1, got {k}.")
    _check_weights(weights, k)
    if k == 1:
        alpha, residual = 1.0, 0.0
    else:
        first = weights.evaluate(1.0)

        def defect(alpha: float) -> float:
            return alpha * first - weights.evaluate(k * alpha)

        alpha, residual = bisect_root(defect, 1.0 / k, 1.0, tolerance, max_iterations)
    return EfficiencyReport(
        lambda_tag=weights.tag,
        k=k,
        alpha=alpha,
        guarantee=2 * alpha - alpha * alpha,
        kind="upper",
        residual=residual,
    )
