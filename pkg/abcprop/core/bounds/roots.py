"""Bracketed bisection for the monotone bound equations."""

from __future__ import annotations

from collections.abc import Callable, Iterable

from scipy.optimize import bisect

from abcprop.core.utils.errors import RootFindingError
from abcprop.core.utils.logging import get_logger

logger = get_logger(__name__)

DEFAULT_TOLERANCE = 1e-9
DEFAULT_MAX_ITERATIONS = 200
_XTOL = 1e-14


def first_with_sign(
    fn: Callable[[float], float], points: Iterable[float], positive: bool
) -> float:
    """Return the first point where ``fn`` is ``>= 0`` (or ``<= 0`` when ``positive`` is false)."""
    last_value = None
    for point in points:
        last_value = fn(point)
        if (last_value >= 0) if positive else (last_value <= 0):
            return point
    raise RootFindingError(
        f"bisection bracket invalid: no {'non-negative' if positive else 'non-positive'} "
        f"endpoint found (last value {last_value})."
    )


def bisect_root(
    fn: Callable[[float], float],
    lower: float,
    upper: float,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> tuple[float, float]:
    """
    Solve ``fn(x) = 0`` on ``[lower, upper]`` by bisection.

    Args:
        fn: Continuous function with opposite signs at the endpoints.
        lower: Left endpoint.
        upper: Right endpoint.
        tolerance: Maximal accepted ``|fn(root)|``.
        max_iterations: Bisection iteration cap.

    Returns:
        ``(root, residual)``.
    """
    f_lower, f_upper = fn(lower), fn(upper)
    if f_lower == 0:
        return lower, 0.0
    if f_upper == 0:
        return upper, 0.0
    if f_lower * f_upper > 0:
        raise RootFindingError(
            f"bisection bracket invalid: f({lower})={f_lower} and f({upper})={f_upper} "
            "share a sign."
        )
    root, result = bisect(
        fn, lower, upper, xtol=_XTOL, maxiter=max_iterations, full_output=True, disp=False
    )
    residual = abs(fn(root))
    logger.debug(
        "bisection on [%g, %g]: root=%.15g residual=%.3g iterations=%d",
        lower,
        upper,
        root,
        residual,
        result.iterations,
    )
    if residual > tolerance:
        raise RootFindingError(
            f"bisection stopped at {root} with residual {residual} > tolerance {tolerance}."
        )
    return float(root), float(residual)
