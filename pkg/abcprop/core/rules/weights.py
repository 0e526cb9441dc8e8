"""Thiele weight functions ``lambda``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from abcprop.core.utils.errors import InvalidInputError
from abcprop.core.utils.numbers import parse_number, parse_rational

LambdaFamily = Literal["pav", "power", "custom"]
Weight = Fraction | float


@dataclass(frozen=True)
class LambdaWeights:
    """
    Non-increasing positive weight sequence defining a Thiele rule.

    ``pav`` is ``1/i``, ``power`` is ``i^-p`` and ``custom`` is an explicit list
    ``lambda(1), ..., lambda(len)``. Integer arguments are evaluated exactly whenever the value is
    rational; :meth:`evaluate` is the continuous extension used by the bound solvers (analytic for
    the symbolic families, piecewise-linear for custom lists, extended below 1 along the first
    segment).
    """

    family: LambdaFamily = "pav"
    exponent: Fraction = Fraction(1)
    values: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        if self.family == "power" and self.exponent < 0:
            raise InvalidInputError("power exponent must be >= 0 for a non-increasing lambda.")
        if self.family == "custom":
            if not self.values:
                raise InvalidInputError("custom lambda needs at least one value.")
            if any(value <= 0 for value in self.values):
                raise InvalidInputError("custom lambda values must be strictly positive.")
            if any(a < b for a, b in zip(self.values, self.values[1:], strict=False)):
                raise InvalidInputError("custom lambda values must be non-increasing.")

    @classmethod
    def pav(cls) -> LambdaWeights:
        return cls("pav")

    @classmethod
    def power(cls, exponent: Fraction | int | str) -> LambdaWeights:
        value = parse_number(exponent) if isinstance(exponent, str) else Fraction(exponent)
        return cls("power", exponent=value)

    @classmethod
    def custom(cls, values: list[Fraction | int]) -> LambdaWeights:
        return cls("custom", values=tuple(Fraction(value) for value in values))

    @property
    def tag(self) -> str:
        """Short label used in reports and CSV rows."""
        if self.family == "pav":
            return "pav"
        if self.family == "power":
            return f"power({self.exponent})"
        return "custom(" + ",".join(str(value) for value in self.values) + ")"

    @property
    def max_length(self) -> int | None:
        """Largest integer argument with a defined weight (``None`` when unbounded)."""
        return len(self.values) if self.family == "custom" else None

    @property
    def is_exact(self) -> bool:
        """Whether integer-argument weights are rationals."""
        return self.family != "power" or self.exponent.denominator == 1

    def weight(self, i: int) -> Weight:
        """
        Weight of the ``i``-th approved committee member.

        Args:
            i: Position, ``i >= 1``.

        Returns:
            ``lambda(i)``; a Fraction when exact, a float otherwise.
        """
        if i < 1:
            raise InvalidInputError(f"lambda is defined for i >= 1, got {i}.")
        if self.family == "pav":
            return Fraction(1, i)
        if self.family == "power":
            if self.exponent.denominator == 1:
                return Fraction(1, i**self.exponent.numerator)
            return float(i) ** (-float(self.exponent))
        if i > len(self.values):
            raise InvalidInputError(
                f"custom lambda has {len(self.values)} values, position {i} requested."
            )
        return self.values[i - 1]

    def cumulative(self, k: int) -> list[Weight]:
        """Prefix sums ``[0, lambda(1), lambda(1)+lambda(2), ...]`` up to ``k`` terms."""
        self.require_length(k)
        sums: list[Weight] = [Fraction(0)]
        for i in range(1, k + 1):
            sums.append(sums[-1] + self.weight(i))
        return sums

    def require_length(self, k: int) -> None:
        """Raise when fewer than ``k`` weights are defined."""
        if self.max_length is not None and k > self.max_length:
            raise InvalidInputError(
                f"lambda too short: {self.max_length} values defined, {k} required."
            )

    def evaluate(self, x: float) -> float:
        """
        Continuous extension ``lambda(x)``.

        Args:
            x: Real argument; must be > 0 for the symbolic families.

        Returns:
            Float value.
        """
        if self.family in ("pav", "power"):
            if x <= 0:
                raise InvalidInputError(f"{self.tag} is undefined at x={x}.")
            if self.family == "pav":
                return 1.0 / x
            return x ** (-float(self.exponent))

        points = np.arange(1, len(self.values) + 1, dtype=float)
        values = np.array([float(value) for value in self.values])
        if x > points[-1] + 1e-12:
            raise InvalidInputError(
                f"custom lambda defined on [1, {len(self.values)}], evaluated at {x}."
            )
        if x >= 1.0 or len(values) == 1:
            return float(np.interp(x, points, values))
        slope = values[1] - values[0]
        return float(values[0] + slope * (x - 1.0))

    @property
    def domain_lower(self) -> float:
        """Open lower end of the continuous domain."""
        return 0.0 if self.family in ("pav", "power") else -math.inf

    def is_non_increasing(self, k: int) -> bool:
        """Check ``lambda(i) >= lambda(i+1)`` on ``1..k``."""
        top = self._check_range(k + 1)
        return all(self.weight(i) >= self.weight(i + 1) for i in range(1, top))

    def is_convex(self, k: int) -> bool:
        """Check discrete convexity on ``1..k+1``."""
        top = self._check_range(k + 1)
        return all(
            self.weight(i) - 2 * self.weight(i + 1) + self.weight(i + 2) >= 0
            for i in range(1, top - 1)
        )

    def _check_range(self, top: int) -> int:
        if self.max_length is None:
            return top
        return min(top, self.max_length)


def parse_lambda(text: str) -> LambdaWeights:
    """
    Parse a textual weight specification.

    Accepted forms: ``pav``, ``sqrt`` (``i^-1/2``), ``power:P`` and ``custom:v1,v2,...``.

    Args:
        text: Specification string.

    Returns:
        Parsed weights.
    """
    spec = text.strip().lower()
    if spec in ("pav", "harmonic"):
        return LambdaWeights.pav()
    if spec == "sqrt":
        return LambdaWeights.power(Fraction(1, 2))
    name, separator, argument = spec.partition(":")
    if not separator:
        raise InvalidInputError(f"unknown lambda specification '{text}'.")
    try:
        if name == "power":
            return LambdaWeights.power(parse_number(argument))
        if name == "custom":
            return LambdaWeights.custom([parse_rational(item) for item in argument.split(",")])
    except ValueError as exc:
        raise InvalidInputError(f"invalid lambda specification '{text}': {exc}") from exc
    raise InvalidInputError(f"unknown lambda specification '{text}'.")
