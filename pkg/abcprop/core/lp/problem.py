"""Sparse linear-program container shared by the builders and the solvers."""

from __future__ import annotations

import bisect
import dataclasses
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal

import numpy as np
from scipy import sparse

from abcprop.core.utils.errors import LpError

Sense = Literal["<=", ">=", "="]
LpStatus = Literal["optimal", "infeasible", "unbounded"]
SENSES: tuple[Sense, ...] = ("<=", ">=", "=")


@dataclass(frozen=True)
class VariableBlock:
    """
    A contiguous run of variables sharing a name prefix.

    ``indices`` holds one integer tuple per variable (rows of a 2-D array); the variable name is the
    prefix followed by the underscore-joined indices, e.g. ``b_3_2_1``.
    """

    name: str
    start: int
    indices: np.ndarray

    @property
    def size(self) -> int:
        return int(self.indices.shape[0])

    @property
    def stop(self) -> int:
        return self.start + self.size

    def label(self, offset: int) -> str:
        parts = [str(int(value)) for value in self.indices[offset]]
        return "_".join([self.name, *parts])


@dataclass(frozen=True)
class LpProblem:
    """
    ``maximize objective @ x`` subject to ``matrix @ x (senses) rhs`` and ``lower <= x <= upper``.

    Attributes:
        tag: Builder identifier (``exact``, ``relaxed``, ``abstract-f`` ...).
        k: Committee size the problem encodes.
        blocks: Variable naming, in column order.
        objective: Dense objective coefficients.
        matrix: Sparse constraint matrix in CSR format.
        senses: One of ``<=``, ``>=``, ``=`` per row.
        rhs: Right-hand sides.
        lower: Variable lower bounds.
        upper: Variable upper bounds (``inf`` when free above).
        row_groups: Constraint labels as ``(label, first_row, count)`` segments.
        metadata: Free-form builder details.
    """

    tag: str
    k: int
    blocks: tuple[VariableBlock, ...]
    objective: np.ndarray
    matrix: sparse.csr_matrix
    senses: np.ndarray
    rhs: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    row_groups: tuple[tuple[str, int, int], ...]
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        rows, cols = self.matrix.shape
        if cols != self.num_variables:
            raise LpError(f"matrix has {cols} columns for {self.num_variables} variables.")
        if len(self.senses) != rows or len(self.rhs) != rows:
            raise LpError("constraint arrays disagree on the number of rows.")
        if len(self.objective) != cols or len(self.lower) != cols or len(self.upper) != cols:
            raise LpError("variable arrays disagree on the number of columns.")
        if not set(np.unique(self.senses)) <= set(SENSES):
            raise LpError(f"unknown constraint sense in {sorted(set(self.senses))}.")
        if not (np.all(np.isfinite(self.matrix.data)) and np.all(np.isfinite(self.rhs))):
            raise LpError("constraint coefficients must be finite.")

    @property
    def num_variables(self) -> int:
        return sum(block.size for block in self.blocks)

    @property
    def num_constraints(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def size(self) -> int:
        """Dense tableau size ``rows * columns`` used for backend selection."""
        return self.num_constraints * self.num_variables

    def block(self, name: str) -> VariableBlock:
        for block in self.blocks:
            if block.name == name:
                return block
        raise KeyError(name)

    def variable_name(self, column: int) -> str:
        starts = [block.start for block in self.blocks]
        position = bisect.bisect_right(starts, column) - 1
        block = self.blocks[position]
        return block.label(column - block.start)

    def row_name(self, row: int) -> str:
        starts = [start for _, start, _ in self.row_groups]
        label, start, _ = self.row_groups[bisect.bisect_right(starts, row) - 1]
        return f"{label}_{row - start}"

    def restricted(self, columns: np.ndarray) -> LpProblem:
        """Sub-problem over ``columns`` only; dropped variables behave as if fixed at zero."""
        columns = np.sort(np.asarray(columns, dtype=np.int64))
        blocks = []
        start = 0
        for block in self.blocks:
            inside = columns[(columns >= block.start) & (columns < block.stop)] - block.start
            blocks.append(VariableBlock(block.name, start, block.indices[inside]))
            start += inside.size
        return dataclasses.replace(
            self,
            blocks=tuple(blocks),
            objective=self.objective[columns],
            matrix=self.matrix[:, columns].tocsr(),
            lower=self.lower[columns],
            upper=self.upper[columns],
            metadata={**self.metadata, "restricted_from": self.num_variables},
        )

    def variable_names(self) -> list[str]:
        return [block.label(offset) for block in self.blocks for offset in range(block.size)]


@dataclass(frozen=True)
class LpSolution:
    """
    Solver outcome.

    ``values`` and ``objective_value`` are ``None`` unless the status is ``optimal``. Exact
    backends also fill ``exact_values``/``exact_objective``.
    """

    status: LpStatus
    backend: str
    objective_value: float | None = None
    values: np.ndarray | None = None
    exact_objective: Fraction | None = None
    exact_values: tuple[Fraction, ...] | None = None
    max_violation: float | None = None
    message: str = ""

    @property
    def is_optimal(self) -> bool:
        return self.status == "optimal"

    def assignment(self, problem: LpProblem) -> dict[str, float]:
        """Variable name to value, optimal solutions only."""
        if self.values is None:
            raise LpError(f"no assignment for a solution with status {self.status}.")
        names = problem.variable_names()
        return {name: float(value) for name, value in zip(names, self.values, strict=True)}


class ProblemBuilder:
    """Accumulates variable blocks and COO constraint triplets before freezing an LpProblem."""

    def __init__(self, tag: str, k: int) -> None:
        self.tag = tag
        self.k = k
        self._blocks: list[VariableBlock] = []
        self._rows: list[np.ndarray] = []
        self._cols: list[np.ndarray] = []
        self._vals: list[np.ndarray] = []
        self._senses: list[np.ndarray] = []
        self._rhs: list[np.ndarray] = []
        self._row_groups: list[tuple[str, int, int]] = []
        self._num_rows = 0
        self._fixed: list[tuple[np.ndarray, float]] = []
        self.metadata: dict[str, Any] = {}

    @property
    def num_variables(self) -> int:
        return sum(block.size for block in self._blocks)

    def add_block(self, name: str, indices: Sequence[Sequence[int]] | np.ndarray) -> VariableBlock:
        array = np.asarray(indices, dtype=np.int64)
        if array.ndim == 1:
            array = array.reshape(-1, 1)
        block = VariableBlock(name=name, start=self.num_variables, indices=array)
        self._blocks.append(block)
        return block

    def add_rows(
        self,
        label: str,
        count: int,
        sense: Sense,
        rhs: float | np.ndarray = 0.0,
    ) -> np.ndarray:
        """Open ``count`` new rows; returns their row ids."""
        if sense not in SENSES:
            raise LpError(f"unknown constraint sense {sense!r}.")
        ids = np.arange(self._num_rows, self._num_rows + count, dtype=np.int64)
        self._num_rows += count
        self._senses.append(np.full(count, sense, dtype="<U2"))
        self._rhs.append(np.broadcast_to(np.asarray(rhs, dtype=float), (count,)).copy())
        if count:
            self._row_groups.append((label, int(ids[0]), count))
        return ids

    def add_terms(self, rows: np.ndarray, cols: np.ndarray, values: float | np.ndarray) -> None:
        """Add coefficients; duplicates on the same cell are summed."""
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        values = np.broadcast_to(np.asarray(values, dtype=float), rows.shape)
        self._rows.append(rows.ravel())
        self._cols.append(cols.ravel())
        self._vals.append(np.array(values, dtype=float).ravel())

    def fix(self, cols: np.ndarray, value: float = 0.0) -> None:
        """Pin variables to ``value`` through their bounds."""
        self._fixed.append((np.asarray(cols, dtype=np.int64), value))

    def build(self, objective: np.ndarray) -> LpProblem:
        num_vars = self.num_variables
        rows = np.concatenate(self._rows) if self._rows else np.zeros(0, dtype=np.int64)
        cols = np.concatenate(self._cols) if self._cols else np.zeros(0, dtype=np.int64)
        vals = np.concatenate(self._vals) if self._vals else np.zeros(0)
        index_type = np.int32 if max(num_vars, self._num_rows) < 2**31 - 1 else np.int64
        matrix = sparse.coo_matrix(
            (vals, (rows.astype(index_type), cols.astype(index_type))),
            shape=(self._num_rows, num_vars),
        ).tocsr()
        matrix.sum_duplicates()
        matrix.eliminate_zeros()
        lower = np.zeros(num_vars)
        upper = np.full(num_vars, np.inf)
        for cols_fixed, value in self._fixed:
            lower[cols_fixed] = value
            upper[cols_fixed] = value
        return LpProblem(
            tag=self.tag,
            k=self.k,
            blocks=tuple(self._blocks),
            objective=np.asarray(objective, dtype=float),
            matrix=matrix,
            senses=np.concatenate(self._senses) if self._senses else np.zeros(0, dtype="<U2"),
            rhs=np.concatenate(self._rhs) if self._rhs else np.zeros(0),
            lower=lower,
            upper=upper,
            row_groups=tuple(self._row_groups),
            metadata=dict(self.metadata),
        )
