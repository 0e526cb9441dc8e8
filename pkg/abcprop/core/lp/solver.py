"""Backend dispatch for LP solving."""

from __future__ import annotations

import dataclasses

import numpy as np
from scipy import sparse
from scipy.optimize import linprog

from abcprop.core.config import LpConfig
from abcprop.core.lp.problem import LpProblem, LpSolution
from abcprop.core.lp.reporting import check_solution
from abcprop.core.lp.simplex import solve_exact
from abcprop.core.utils.errors import LpError
from abcprop.core.utils.logging import get_logger

logger = get_logger(__name__)

_HIGHS_STATUS = {0: "optimal", 2: "infeasible", 3: "unbounded"}


def choose_backend(problem: LpProblem, settings: LpConfig) -> str:
    """Resolve ``auto`` to the rational simplex for small problems and HiGHS otherwise."""
    if settings.backend != "auto":
        return settings.backend
    return "simplex" if problem.size <= settings.simplex_size_limit else "highs"


def _solve_highs(problem: LpProblem) -> LpSolution:
    matrix = problem.matrix
    senses = problem.senses
    le_rows = np.flatnonzero(senses == "<=")
    ge_rows = np.flatnonzero(senses == ">=")
    eq_rows = np.flatnonzero(senses == "=")

    a_ub = None
    b_ub = None
    if le_rows.size or ge_rows.size:
        a_ub = sparse.vstack([matrix[le_rows], -matrix[ge_rows]], format="csr")
        b_ub = np.concatenate([problem.rhs[le_rows], -problem.rhs[ge_rows]])
    a_eq = matrix[eq_rows] if eq_rows.size else None
    b_eq = problem.rhs[eq_rows] if eq_rows.size else None
    bounds = np.column_stack([problem.lower, problem.upper])

    result = linprog(
        -problem.objective,
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=bounds,
        method="highs",
    )
    status = _HIGHS_STATUS.get(result.status)
    if status is None:
        raise LpError(f"HiGHS failed on {problem.tag} (status {result.status}): {result.message}")
    if status != "optimal":
        return LpSolution(status=status, backend="highs", message=str(result.message))
    return LpSolution(
        status="optimal",
        backend="highs",
        objective_value=float(-result.fun),
        values=np.asarray(result.x, dtype=float),
        message=str(result.message),
    )


def solve_lp(
    problem: LpProblem,
    settings: LpConfig | None = None,
    backend: str | None = None,
) -> LpSolution:
    """
    Maximize ``problem`` and replay its constraints against the returned point.

    Infeasible and unbounded problems are reported through the solution status.

    Args:
        problem: Problem to solve.
        settings: LP configuration section (defaults when omitted).
        backend: Override of ``settings.backend``.

    Returns:
        Solution with ``max_violation`` filled for optimal statuses.
    """
    settings = settings or LpConfig()
    if backend is not None:
        settings = settings.model_copy(update={"backend": backend})
    chosen = choose_backend(problem, settings)
    logger.info(
        "Solving %s LP k=%d with %s: %d variables, %d constraints",
        problem.tag,
        problem.k,
        chosen,
        problem.num_variables,
        problem.num_constraints,
    )
    if chosen == "simplex":
        solution = solve_exact(problem, settings.max_denominator)
    elif chosen == "highs":
        solution = _solve_highs(problem)
    else:
        raise LpError(f"unknown LP backend '{chosen}'.")

    if not solution.is_optimal:
        logger.info("%s LP k=%d is %s", problem.tag, problem.k, solution.status)
        return solution
    violation = check_solution(problem, solution)
    if violation > settings.feasibility_tolerance:
        logger.warning(
            "%s LP k=%d: replay violation %.3g exceeds tolerance %.3g",
            problem.tag,
            problem.k,
            violation,
            settings.feasibility_tolerance,
        )
    return dataclasses.replace(solution, max_violation=violation)
