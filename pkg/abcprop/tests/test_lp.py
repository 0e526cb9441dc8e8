"""Tests for the worst-case LP builders, solvers and exports."""

from __future__ import annotations

import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

import numpy as np

from abcprop.core.bounds.seqpav import seqpav_delta
from abcprop.core.config import LpConfig
from abcprop.core.lp import (
    LpProblem,
    LpSolution,
    ProblemBuilder,
    build_abstract_f_lp,
    build_exact_lp,
    build_problem,
    build_relaxed_lp,
    check_solution,
    choose_backend,
    h_seqpav,
    lp_format_text,
    lp_to_profile,
    solution_frame,
    solve_exact,
    solve_lp,
    write_lp_format,
)
from abcprop.core.rules.sequential import seq_pav
from abcprop.core.utils.errors import BudgetExceededError, InvalidInputError
from abcprop.tests.helpers import SLOW_TESTS


def toy_problem() -> LpProblem:
    """``max x + y`` with ``x + 2y <= 4`` and ``3x + y <= 6``; optimum ``(8/5, 6/5)``."""
    builder = ProblemBuilder("toy", 1)
    builder.add_block("v", [[1], [2]])
    rows = builder.add_rows("cap", 2, "<=", np.array([4.0, 6.0]))
    builder.add_terms(rows[[0, 0, 1, 1]], np.array([0, 1, 0, 1]), np.array([1.0, 2.0, 3.0, 1.0]))
    return builder.build(np.array([1.0, 1.0]))


def single_variable_problem(lower_row: float, upper_row: float | None) -> LpProblem:
    builder = ProblemBuilder("single", 1)
    builder.add_block("z", [[0]])
    rows = builder.add_rows("floor", 1, ">=", lower_row)
    builder.add_terms(rows, np.array([0]), 1.0)
    if upper_row is not None:
        rows = builder.add_rows("ceiling", 1, "<=", upper_row)
        builder.add_terms(rows, np.array([0]), 1.0)
    return builder.build(np.array([1.0]))


class TestSolvers(unittest.TestCase):
    """Validate the rational simplex and the HiGHS dispatch."""

    def test_exact_optimum(self) -> None:
        solution = solve_exact(toy_problem())
        self.assertTrue(solution.is_optimal)
        self.assertEqual(solution.exact_objective, Fraction(14, 5))
        self.assertEqual(solution.exact_values, (Fraction(8, 5), Fraction(6, 5)))

    def test_highs_agrees(self) -> None:
        solution = solve_lp(toy_problem(), backend="highs")
        self.assertEqual(solution.backend, "highs")
        self.assertAlmostEqual(solution.objective_value, 2.8, places=7)
        self.assertLess(solution.max_violation, 1e-7)

    def test_infeasible_and_unbounded(self) -> None:
        infeasible = single_variable_problem(2.0, 1.0)
        self.assertEqual(solve_exact(infeasible).status, "infeasible")
        self.assertEqual(solve_lp(infeasible, backend="highs").status, "infeasible")
        self.assertEqual(solve_exact(single_variable_problem(0.0, None)).status, "unbounded")

    def test_choose_backend(self) -> None:
        self.assertEqual(choose_backend(toy_problem(), LpConfig()), "simplex")
        self.assertEqual(choose_backend(toy_problem(), LpConfig(simplex_size_limit=1)), "highs")
        self.assertEqual(choose_backend(toy_problem(), LpConfig(backend="highs")), "highs")

    def test_check_solution(self) -> None:
        problem = toy_problem()
        self.assertEqual(check_solution(problem, solve_exact(problem)), 0.0)
        fake = LpSolution(status="optimal", backend="test", values=np.array([2.0, 2.0]))
        self.assertAlmostEqual(check_solution(problem, fake), 2.0)

    def test_solution_frame(self) -> None:
        problem = toy_problem()
        frame = solution_frame(problem, solve_exact(problem), exact=True)
        self.assertEqual(list(frame["variable"]), ["v_1", "v_2"])
        self.assertEqual(list(frame["value"]), ["8/5", "6/5"])


class TestBuilders(unittest.TestCase):
    """Validate problem shapes, names and size budgets."""

    def test_exact_shape(self) -> None:
        problem = build_exact_lp(3)
        self.assertEqual(problem.num_variables, 7)
        self.assertEqual(problem.num_constraints, 4)
        self.assertEqual(problem.variable_name(0), "x_1")
        self.assertEqual(problem.row_name(0), "sum_0")
        self.assertEqual(problem.row_name(3), "dominance_2")
        self.assertEqual(build_exact_lp(3, include_empty=True).num_variables, 8)

    def test_abstract_shape(self) -> None:
        problem = build_abstract_f_lp(2)
        self.assertEqual(problem.num_variables, 4)
        self.assertEqual(problem.upper[0], 0.0)
        self.assertEqual(problem.tag, "abstract-f")
        self.assertEqual(build_abstract_f_lp(3, submodular=True).tag, "abstract-f-submodular")

    def test_budgets(self) -> None:
        with self.assertRaises(BudgetExceededError):
            build_exact_lp(15)
        with self.assertRaises(InvalidInputError):
            build_exact_lp(0)
        with self.assertRaises(BudgetExceededError):
            build_problem("exact", 5, LpConfig(exact_max_k=4))
        with self.assertRaises(InvalidInputError):
            build_problem("bogus", 3)

    def test_lp_format_text(self) -> None:
        text = lp_format_text(build_exact_lp(2))
        self.assertIn("Maximize", text)
        self.assertIn(" obj: + 2 x_2 + 1 x_3", text)
        self.assertIn(" sum_0: + 1 x_1 + 1 x_2 + 1 x_3 = 1", text)
        self.assertTrue(text.endswith("End\n"))
        self.assertIn(" f_0 = 0", lp_format_text(build_abstract_f_lp(2)))

    def test_write_lp_format(self) -> None:
        with tempfile.TemporaryDirectory() as temp_dir:
            path = write_lp_format(build_exact_lp(2), Path(temp_dir) / "lp" / "exact.lp")
            self.assertTrue(path.read_text(encoding="utf-8").startswith("\\* exact k=2 *\\"))


class TestSeqPavEstimates(unittest.TestCase):
    """Validate worst-case last-step gains against known optima."""

    def test_exact_small(self) -> None:
        self.assertEqual(h_seqpav(1).h, 1)
        estimate = h_seqpav(3)
        self.assertEqual(estimate.h, Fraction(9, 8))
        self.assertAlmostEqual(estimate.coefficient, 8 / 9)
        self.assertEqual(estimate.lower.value, Fraction(-1, 9))
        self.assertEqual(estimate.upper.value, Fraction(8, 9))

    def test_exact_k10(self) -> None:
        self.assertAlmostEqual(h_seqpav(10).coefficient, 0.7825, delta=1e-3)

    def test_relaxed_bounds_exact(self) -> None:
        self.assertAlmostEqual(float(h_seqpav(1, "relaxed").h), 1.0, places=7)
        for k in range(2, 13):
            with self.subTest(k=k):
                relaxed = h_seqpav(k, "relaxed")
                exact = h_seqpav(k, "exact")
                self.assertGreaterEqual(float(relaxed.h), float(exact.h) - 1e-7)
                self.assertTrue(relaxed.lower.notes)
        self.assertAlmostEqual(h_seqpav(10, "relaxed").coefficient, 0.7705, delta=1e-3)

    def test_relaxed_k50(self) -> None:
        coefficient = h_seqpav(50, "relaxed").coefficient
        self.assertAlmostEqual(coefficient, 0.7096, delta=5e-4)
        self.assertLess(coefficient, h_seqpav(20, "relaxed").coefficient)

    def test_relaxed_problem_builds(self) -> None:
        problem = build_relaxed_lp(4)
        self.assertGreater(problem.num_variables, 0)
        self.assertEqual(problem.tag, "relaxed")

    def test_abstract_values(self) -> None:
        for k in (2, 3, 4):
            self.assertAlmostEqual(h_seqpav(k, "abstract").coefficient, 2 / k, places=7)

    def test_abstract_submodular_small(self) -> None:
        self.assertEqual(h_seqpav(1, "abstract-submodular").h, 1)
        self.assertEqual(h_seqpav(2, "abstract-submodular").h, 1)
        self.assertEqual(h_seqpav(3, "abstract-submodular").h, Fraction(9, 8))
        self.assertAlmostEqual(h_seqpav(4, "abstract-submodular").coefficient, 9 / 11, places=6)

    def test_abstract_submodular_between_pav_and_unconstrained(self) -> None:
        # The normalized PAV score of the exact LP's optimum is a feasible f.
        for k in range(2, 7):
            with self.subTest(k=k):
                submodular = h_seqpav(k, "abstract-submodular").coefficient
                self.assertGreaterEqual(submodular, 2 / k - 1e-7)
                self.assertLessEqual(submodular, h_seqpav(k, "exact").coefficient + 1e-7)

    def test_lp_to_profile(self) -> None:
        estimate = h_seqpav(3)
        profile = lp_to_profile(estimate.problem, estimate.solution)
        self.assertEqual(profile.num_candidates, 3)
        self.assertTrue(all(group.weight.denominator == 1 for group in profile.groups))
        _, trace = seq_pav(profile, 3)
        self.assertEqual(trace.order, (1, 2, 3))
        self.assertEqual(3 * seqpav_delta(profile, 3), Fraction(9, 8))

    def test_lp_to_profile_needs_exact_lp(self) -> None:
        estimate = h_seqpav(3, "relaxed")
        with self.assertRaises(InvalidInputError):
            lp_to_profile(estimate.problem, estimate.solution)

    @unittest.skipUnless(SLOW_TESTS, "set ABCPROP_SLOW_TESTS=1 to run large LPs")
    def test_relaxed_k200(self) -> None:
        self.assertAlmostEqual(h_seqpav(200, "relaxed").coefficient, 0.694, delta=1e-3)


if __name__ == "__main__":
    unittest.main()
