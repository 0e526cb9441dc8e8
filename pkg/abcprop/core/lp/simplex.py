"""Dense two-phase primal simplex over exact rationals with Bland's anti-cycling rule."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from abcprop.core.lp.problem import LpProblem, LpSolution
from abcprop.core.utils.errors import LpError
from abcprop.core.utils.logging import get_logger

logger = get_logger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


class _Tableau:
    """Rows of ``B^-1 [A | b]`` with the current basis."""

    def __init__(self, rows: list[list[Fraction]], basis: list[int], num_columns: int) -> None:
        self.rows = rows
        self.basis = basis
        self.num_columns = num_columns
        self.pivots = 0

    def pivot(self, row: int, column: int) -> None:
        pivot_row = self.rows[row]
        pivot_value = pivot_row[column]
        if pivot_value != ONE:
            self.rows[row] = pivot_row = [value / pivot_value for value in pivot_row]
        nonzero = [j for j, value in enumerate(pivot_row) if value]
        for i, other in enumerate(self.rows):
            if i == row:
                continue
            factor = other[column]
            if factor:
                for j in nonzero:
                    other[j] -= factor * pivot_row[j]
        self.basis[row] = column
        self.pivots += 1

    def reduced_costs(self, cost: list[Fraction]) -> list[Fraction]:
        reduced = list(cost)
        for basic, row in zip(self.basis, self.rows, strict=True):
            weight = cost[basic]
            if weight:
                for j in range(self.num_columns):
                    if row[j]:
                        reduced[j] -= weight * row[j]
        return reduced

    def objective(self, cost: list[Fraction]) -> Fraction:
        return sum((cost[b] * row[-1] for b, row in zip(self.basis, self.rows, strict=True)), ZERO)

    def minimize(self, cost: list[Fraction], allowed: int, max_pivots: int) -> str:
        """
        Run Bland's rule on columns ``0..allowed-1``.

        Returns:
            ``optimal`` or ``unbounded``.
        """
        reduced = self.reduced_costs(cost)
        while True:
            entering = next((j for j in range(allowed) if reduced[j] < 0), None)
            if entering is None:
                return "optimal"
            best: tuple[Fraction, int, int] | None = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    candidate = (row[-1] / row[entering], self.basis[i], i)
                    if best is None or candidate[:2] < best[:2]:
                        best = candidate
            if best is None:
                return "unbounded"
            leaving_row = best[2]
            self.pivot(leaving_row, entering)
            factor = reduced[entering]
            pivot_row = self.rows[leaving_row]
            for j in range(self.num_columns):
                if pivot_row[j]:
                    reduced[j] -= factor * pivot_row[j]
            if self.pivots > max_pivots:
                raise LpError(f"simplex exceeded {max_pivots} pivots.")


def _rationalize(array: np.ndarray, max_denominator: int) -> list[Fraction]:
    cache: dict[float, Fraction] = {}
    out = []
    for value in array.tolist():
        if value not in cache:
            cache[value] = Fraction(value).limit_denominator(max_denominator)
        out.append(cache[value])
    return out


def solve_exact(problem: LpProblem, max_denominator: int = 10**6) -> LpSolution:
    """
    Solve ``problem`` exactly after rationalizing its float data.

    Every coefficient is recovered as the nearest fraction with denominator at most
    ``max_denominator``; the builders only emit such coefficients.

    Args:
        problem: Problem with finite lower bounds.
        max_denominator: Denominator cap for coefficient recovery.

    Returns:
        Solution carrying exact values and objective.
    """
    if not np.all(np.isfinite(problem.lower)):
        raise LpError("the rational simplex needs finite lower bounds.")
    num_vars = problem.num_variables
    dense = problem.matrix.toarray()
    lower = _rationalize(problem.lower, max_denominator)
    upper = [
        None if math.isinf(value) else Fraction(value).limit_denominator(max_denominator)
        for value in problem.upper.tolist()
    ]
    free_columns = [j for j in range(num_vars) if upper[j] is None or upper[j] > lower[j]]
    column_of = {j: position for position, j in enumerate(free_columns)}

    raw_rows: list[tuple[list[Fraction], str, Fraction]] = []
    for i in range(problem.num_constraints):
        coefficients = _rationalize(dense[i], max_denominator)
        rhs = Fraction(problem.rhs[i]).limit_denominator(max_denominator)
        rhs -= sum((coefficients[j] * lower[j] for j in range(num_vars) if lower[j]), ZERO)
        row = [coefficients[j] for j in free_columns]
        raw_rows.append((row, str(problem.senses[i]), rhs))
    for j in free_columns:
        if upper[j] is not None:
            row = [ZERO] * len(free_columns)
            row[column_of[j]] = ONE
            raw_rows.append((row, "<=", upper[j] - lower[j]))

    structural = len(free_columns)
    slack_count = sum(1 for _, sense, _ in raw_rows if sense != "=")
    artificial_start = structural + slack_count
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    needs_artificial: list[int] = []
    slack = structural
    for row, sense, rhs in raw_rows:
        extended = row + [ZERO] * slack_count
        slack_column = None
        if sense != "=":
            extended[slack] = ONE if sense == "<=" else -ONE
            slack_column = slack
            slack += 1
        if rhs < 0:
            extended = [-value for value in extended]
            rhs = -rhs
        rows.append(extended + [rhs])
        if slack_column is not None and extended[slack_column] == ONE:
            basis.append(slack_column)
        else:
            basis.append(-1)
            needs_artificial.append(len(rows) - 1)

    num_columns = artificial_start + len(needs_artificial)
    artificial_of = {row: artificial_start + n for n, row in enumerate(needs_artificial)}
    for row_index, row in enumerate(rows):
        rhs = row.pop()
        row.extend([ZERO] * len(needs_artificial))
        row.append(rhs)
        if row_index in artificial_of:
            row[artificial_of[row_index]] = ONE
            basis[row_index] = artificial_of[row_index]

    tableau = _Tableau(rows, basis, num_columns)
    max_pivots = 50 * (num_columns + len(rows)) + 1000

    if needs_artificial:
        phase_one = [ZERO] * artificial_start + [ONE] * len(needs_artificial)
        tableau.minimize(phase_one, num_columns, max_pivots)
        if tableau.objective(phase_one) > 0:
            logger.debug("simplex phase one: infeasible after %d pivots", tableau.pivots)
            return LpSolution(status="infeasible", backend="simplex", message="phase one > 0")
        _drive_out_artificials(tableau, artificial_start)

    objective = _rationalize(problem.objective, max_denominator)
    cost = [-objective[j] for j in free_columns] + [ZERO] * (num_columns - structural)
    status = tableau.minimize(cost, artificial_start, max_pivots)
    if status == "unbounded":
        return LpSolution(status="unbounded", backend="simplex", message="objective unbounded")

    values = list(lower)
    for basic, row in zip(tableau.basis, tableau.rows, strict=True):
        if basic < structural:
            values[free_columns[basic]] += row[-1]
    exact_objective = sum((c * x for c, x in zip(objective, values, strict=True)), ZERO)
    logger.debug("simplex optimal after %d pivots: %s", tableau.pivots, exact_objective)
    return LpSolution(
        status="optimal",
        backend="simplex",
        objective_value=float(exact_objective),
        values=np.array([float(value) for value in values]),
        exact_objective=exact_objective,
        exact_values=tuple(values),
    )


def _drive_out_artificials(tableau: _Tableau, artificial_start: int) -> None:
    """Pivot zero-level artificials out of the basis, dropping redundant rows."""
    row = 0
    while row < len(tableau.rows):
        if tableau.basis[row] < artificial_start:
            row += 1
            continue
        entries = tableau.rows[row]
        column = next((j for j in range(artificial_start) if entries[j]), None)
        if column is None:
            del tableau.rows[row]
            del tableau.basis[row]
            continue
        tableau.pivot(row, column)
        row += 1
