"""LP text export, solution replay and tabulation."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pandas as pd

from abcprop.core.lp.problem import LpProblem, LpSolution
from abcprop.core.utils.errors import ArtifactError, LpError
from abcprop.core.utils.numbers import format_value

_TERMS_PER_LINE = 6


def _format_coefficient(value: float) -> str:
    return f"{value:.15g}"


def _linear_form(names: list[str], columns: np.ndarray, values: np.ndarray) -> list[str]:
    terms = []
    for column, value in zip(columns.tolist(), values.tolist(), strict=True):
        sign = "-" if value < 0 else "+"
        terms.append(f"{sign} {_format_coefficient(abs(value))} {names[column]}")
    if not terms:
        return ["0"]
    return [
        " ".join(terms[start : start + _TERMS_PER_LINE])
        for start in range(0, len(terms), _TERMS_PER_LINE)
    ]


def lp_format_text(problem: LpProblem) -> str:
    """Render ``problem`` in the CPLEX LP text format."""
    names = problem.variable_names()
    lines = [f"\\* {problem.tag} k={problem.k} *\\", "Maximize"]
    objective_columns = np.flatnonzero(problem.objective)
    form = _linear_form(names, objective_columns, problem.objective[objective_columns])
    lines.append(f" obj: {form[0]}")
    lines.extend(f"  {part}" for part in form[1:])

    lines.append("Subject To")
    matrix = problem.matrix
    for row in range(problem.num_constraints):
        start, stop = matrix.indptr[row], matrix.indptr[row + 1]
        form = _linear_form(names, matrix.indices[start:stop], matrix.data[start:stop])
        sense = problem.senses[row]
        rhs = _format_coefficient(float(problem.rhs[row]))
        if len(form) == 1:
            lines.append(f" {problem.row_name(row)}: {form[0]} {sense} {rhs}")
            continue
        lines.append(f" {problem.row_name(row)}: {form[0]}")
        lines.extend(f"  {part}" for part in form[1:-1])
        lines.append(f"  {form[-1]} {sense} {rhs}")

    bound_lines = []
    for column, (low, high) in enumerate(zip(problem.lower, problem.upper, strict=True)):
        if low == high:
            bound_lines.append(f" {names[column]} = {_format_coefficient(float(low))}")
        elif np.isfinite(high) or low != 0:
            low_text = "-inf" if np.isneginf(low) else _format_coefficient(float(low))
            high_text = "+inf" if np.isposinf(high) else _format_coefficient(float(high))
            bound_lines.append(f" {low_text} <= {names[column]} <= {high_text}")
    if bound_lines:
        lines.append("Bounds")
        lines.extend(bound_lines)
    lines.append("End")
    return "\n".join(lines) + "\n"


def write_lp_format(problem: LpProblem, path: Path) -> Path:
    """
    Write ``problem`` as an LP file for cross-checking with external solvers.

    Args:
        problem: Problem to export.
        path: Destination file.

    Returns:
        The written path.
    """
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(lp_format_text(problem), encoding="utf-8")
    except OSError as exc:
        raise ArtifactError(f"Cannot write LP file {path}: {exc}") from exc
    return path


def check_solution(problem: LpProblem, solution: LpSolution) -> float:
    """
    Replay every constraint and bound against the solution.

    Returns:
        Largest absolute violation (``0.0`` when all hold exactly).
    """
    if solution.values is None:
        raise LpError(f"cannot replay a solution with status {solution.status}.")
    values = np.asarray(solution.values, dtype=float)
    activity = problem.matrix @ values
    gap = activity - problem.rhs
    violation = np.zeros_like(gap)
    senses = problem.senses
    violation[senses == "<="] = np.maximum(gap[senses == "<="], 0.0)
    violation[senses == ">="] = np.maximum(-gap[senses == ">="], 0.0)
    violation[senses == "="] = np.abs(gap[senses == "="])
    bound_violation = np.maximum(problem.lower - values, 0.0)
    finite_upper = np.isfinite(problem.upper)
    upper_violation = np.maximum(values[finite_upper] - problem.upper[finite_upper], 0.0)
    parts = [violation, bound_violation, upper_violation]
    return float(max((part.max() for part in parts if part.size), default=0.0))


def solution_frame(
    problem: LpProblem,
    solution: LpSolution,
    exact: bool = False,
    digits: int = 6,
    include_zeros: bool = False,
) -> pd.DataFrame:
    """Variables and values of an optimal solution, zeros omitted unless requested."""
    if solution.values is None:
        raise LpError(f"no values for a solution with status {solution.status}.")
    rows = []
    for column, value in enumerate(solution.values.tolist()):
        exact_value = solution.exact_values[column] if solution.exact_values else None
        if not include_zeros and (exact_value == 0 if exact_value is not None else value == 0):
            continue
        shown = exact_value if (exact and exact_value is not None) else value
        rows.append(
            {
                "variable": problem.variable_name(column),
                "value": format_value(shown, exact, digits),
            }
        )
    return pd.DataFrame(rows, columns=["variable", "value"])
