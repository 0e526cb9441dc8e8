"""Sequential-PAV worst-case estimates from the LP builders."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from abcprop.core.bounds.seqpav import seqpav_degree_from_h
from abcprop.core.bounds.types import GuaranteeReport
from abcprop.core.config import LpConfig
from abcprop.core.lp.builders import build_abstract_f_lp, build_exact_lp, build_relaxed_lp
from abcprop.core.lp.problem import LpProblem, LpSolution
from abcprop.core.lp.simplex import solve_exact
from abcprop.core.lp.solver import solve_lp
from abcprop.core.model.profile import ApprovalProfile
from abcprop.core.utils.errors import InvalidInputError, LpError
from abcprop.core.utils.logging import get_logger

logger = get_logger(__name__)

LpMethod = Literal["exact", "relaxed", "abstract", "abstract-submodular"]
LP_METHODS: tuple[str, ...] = ("exact", "relaxed", "abstract", "abstract-submodular")
_SUPPORT_THRESHOLD = 1e-9


@dataclass(frozen=True)
class SeqPavEstimate:
    """Worst-case normalized last-step gain ``h = k * Delta`` and the degree bounds it implies."""

    k: int
    method: str
    h: Fraction | float
    coefficient: float
    lower: GuaranteeReport
    upper: GuaranteeReport
    problem: LpProblem
    solution: LpSolution


def build_problem(method: str, k: int, settings: LpConfig | None = None) -> LpProblem:
    """Build the LP of ``method`` under the configured size budgets."""
    settings = settings or LpConfig()
    if method == "exact":
        return build_exact_lp(k, max_k=settings.exact_max_k)
    if method == "relaxed":
        return build_relaxed_lp(k, max_k=settings.relaxed_max_k)
    if method in ("abstract", "abstract-submodular"):
        return build_abstract_f_lp(
            k, submodular=method == "abstract-submodular", max_k=settings.abstract_max_k
        )
    raise InvalidInputError(f"unknown LP method '{method}'; expected one of {LP_METHODS}.")


def h_seqpav(
    k: int,
    method: LpMethod | str = "exact",
    ell: int = 1,
    settings: LpConfig | None = None,
    backend: str | None = None,
) -> SeqPavEstimate:
    """
    Solve one of the worst-case LPs and convert its optimum into degree bounds.

    Args:
        k: Committee size.
        method: ``exact``, ``relaxed``, ``abstract`` or ``abstract-submodular``.
        ell: Group largeness of the returned reports.
        settings: LP configuration.
        backend: Backend override.

    Returns:
        The estimate; ``coefficient`` is ``1 / h``.
    """
    problem = build_problem(method, k, settings)
    solution = solve_lp(problem, settings, backend)
    if not solution.is_optimal:
        raise LpError(f"{method} LP for k={k} is {solution.status}.")
    h: Fraction | float
    if solution.exact_objective is not None:
        h = solution.exact_objective
    else:
        assert solution.objective_value is not None
        h = solution.objective_value
    if h <= 0:
        raise LpError(f"{method} LP for k={k} has non-positive optimum {h}.")
    lower, upper = seqpav_degree_from_h(ell, k, h)
    if method != "exact":
        note = ("relaxation: only the lower bound is certified",)
        lower = dataclasses.replace(lower, notes=note)
        upper = dataclasses.replace(upper, notes=note)
    coefficient = float(1 / h)
    logger.info("%s LP k=%d: h=%.10g coefficient=%.6g", method, k, float(h), coefficient)
    return SeqPavEstimate(
        k=k,
        method=method,
        h=h,
        coefficient=coefficient,
        lower=lower,
        upper=upper,
        problem=problem,
        solution=solution,
    )


def _refined_values(
    problem: LpProblem, solution: LpSolution, max_denominator: int
) -> list[Fraction]:
    """Exact values for a float solution: re-solve on its support, else round."""
    assert solution.values is not None
    support = np.flatnonzero(solution.values > _SUPPORT_THRESHOLD)
    restricted = problem.restricted(support)
    refined = solve_exact(restricted, max_denominator)
    target = solution.objective_value or 0.0
    if refined.is_optimal and refined.exact_values is not None:
        assert refined.objective_value is not None
        if refined.objective_value >= target - 1e-6:
            values = [Fraction(0)] * problem.num_variables
            for position, column in enumerate(support.tolist()):
                values[column] = refined.exact_values[position]
            return values
    logger.warning("exact re-solve on the support failed; rounding the float solution")
    rounded = [
        max(Fraction(value).limit_denominator(max_denominator), Fraction(0))
        for value in solution.values.tolist()
    ]
    total = sum(rounded, Fraction(0))
    if total <= 0:
        raise LpError("rounded exact-LP solution has no mass.")
    return [value / total for value in rounded]


def _dominance_slack(masks: list[int], values: list[Fraction], k: int) -> Fraction:
    """Smallest left-hand side over the greedy-order rows, evaluated exactly."""
    worst: Fraction | None = None
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            total = Fraction(0)
            for mask, value in zip(masks, values, strict=True):
                if not value:
                    continue
                before = (mask & ((1 << (i - 1)) - 1)).bit_count()
                if mask >> (i - 1) & 1:
                    total += value / (before + 1)
                if mask >> (j - 1) & 1:
                    total -= value / (before + 1)
            if worst is None or total < worst:
                worst = total
    return worst if worst is not None else Fraction(0)


def lp_to_profile(
    problem: LpProblem, solution: LpSolution, max_denominator: int = 10**6
) -> ApprovalProfile:
    """
    Convert an optimal exact-LP solution into an integer-weight profile on ``k`` candidates.

    Values are made exact (by re-solving on the solution's support with the rational simplex,
    falling back to continued-fraction rounding), the greedy-order rows are re-verified exactly
    and the fractions are scaled by their common denominator.

    Args:
        problem: The exact LP.
        solution: Optimal solution of ``problem``.
        max_denominator: Denominator cap for rounding.

    Returns:
        Profile whose sequential-PAV run elects ``1..k`` in order under lexicographic ties.
    """
    if problem.tag != "exact":
        raise InvalidInputError(f"lp_to_profile needs the exact LP, got '{problem.tag}'.")
    if not solution.is_optimal:
        raise LpError(f"cannot convert a solution with status {solution.status}.")
    k = problem.k
    if solution.exact_values is not None:
        values = list(solution.exact_values)
    else:
        values = _refined_values(problem, solution, max_denominator)
    masks = [int(mask) for mask in problem.block("x").indices[:, 0]]

    if sum(values, Fraction(0)) != 1:
        raise LpError("rationalized exact-LP solution does not sum to one.")
    slack = _dominance_slack(masks, values, k)
    if slack < 0:
        raise LpError(f"rationalized exact-LP solution breaks greedy order by {-slack}.")

    scale = math.lcm(*(value.denominator for value in values if value))
    groups = []
    for mask, value in zip(masks, values, strict=True):
        if value and mask:
            members = [c for c in range(1, k + 1) if mask >> (c - 1) & 1]
            groups.append((value * scale, members))
    return ApprovalProfile.build(k, groups)
