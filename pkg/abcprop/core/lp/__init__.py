"""Worst-case linear programs for sequential PAV and their solvers."""

from abcprop.core.lp.builders import build_abstract_f_lp, build_exact_lp, build_relaxed_lp
from abcprop.core.lp.problem import LpProblem, LpSolution, ProblemBuilder, VariableBlock
from abcprop.core.lp.reporting import (
    check_solution,
    lp_format_text,
    solution_frame,
    write_lp_format,
)
from abcprop.core.lp.seqpav import (
    LP_METHODS,
    SeqPavEstimate,
    build_problem,
    h_seqpav,
    lp_to_profile,
)
from abcprop.core.lp.simplex import solve_exact
from abcprop.core.lp.solver import choose_backend, solve_lp

__all__ = [
    "LP_METHODS",
    "LpProblem",
    "LpSolution",
    "ProblemBuilder",
    "SeqPavEstimate",
    "VariableBlock",
    "build_abstract_f_lp",
    "build_exact_lp",
    "build_problem",
    "build_relaxed_lp",
    "check_solution",
    "choose_backend",
    "h_seqpav",
    "lp_format_text",
    "lp_to_profile",
    "solution_frame",
    "solve_exact",
    "solve_lp",
    "write_lp_format",
]
