"""Exact-rational parsing and formatting helpers."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")

Number = Fraction | int | float


def parse_rational(text: str) -> Fraction:
    """
    Parse a decimal integer or ``p/q`` string into a Fraction.

    Args:
        text: Source text.

    Returns:
        Exact rational value.
    """
    match = _RATIONAL_PATTERN.match(text)
    if match is None:
        raise ValueError(f"Expected an integer or p/q rational, got '{text.strip()}'.")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ValueError(f"Zero denominator in '{text.strip()}'.")
    return Fraction(numerator, denominator)


def parse_number(text: str) -> Fraction:
    """Parse an integer, ``p/q`` rational, or finite decimal literal exactly."""
    try:
        return parse_rational(text)
    except ValueError:
        pass
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"Expected a number, got '{text.strip()}'.") from exc


def format_rational(value: Fraction | int) -> str:
    """Render a rational as ``p`` or ``p/q``."""
    fraction = Fraction(value)
    if fraction.denominator == 1:
        return str(fraction.numerator)
    return f"{fraction.numerator}/{fraction.denominator}"


def format_value(value: Number, exact: bool = False, digits: int = 6) -> str:
    """
    Render a numeric value for text and CSV output.

    Args:
        value: Rational or float value.
        exact: Render rationals as ``p/q`` instead of rounding.
        digits: Significant digits for inexact rendering.

    Returns:
        Deterministic string form.
    """
    if exact and isinstance(value, Rational):
        return format_rational(Fraction(value))
    return f"{float(value):.{digits}g}"


def rationalize(value: float, max_denominator: int = 10**6) -> Fraction:
    """Continued-fraction rounding of a float to the closest rational with bounded denominator."""
    return Fraction(value).limit_denominator(max_denominator)
