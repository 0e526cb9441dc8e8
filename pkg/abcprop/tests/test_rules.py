"""Unit and property tests for the committee election rules."""

from __future__ import annotations

import random
import unittest
from fractions import Fraction
from itertools import pairwise

import numpy as np

from abcprop.core.gen.party import gen_party_list, party_blocks
from abcprop.core.lp import ProblemBuilder, solve_lp
from abcprop.core.model.io import example1_profile
from abcprop.core.model.profile import ApprovalProfile
from abcprop.core.rules.apportionment import dhondt_apportionment, seats_by_block
from abcprop.core.rules.phragmen import (
    max_phragmen,
    optimal_max_load,
    seq_phragmen_credit,
    seq_phragmen_load,
)
from abcprop.core.rules.sequential import max_last_step_gain, seq_pav, seq_thiele
from abcprop.core.rules.thiele import pav, thiele_exact, thiele_score
from abcprop.core.rules.ties import TieBreak, TiePolicy
from abcprop.core.rules.weights import LambdaWeights, parse_lambda
from abcprop.core.utils.errors import BudgetExceededError, InvalidInputError, StallError
from abcprop.tests.helpers import approved_candidates, random_profile


class TestLambdaWeights(unittest.TestCase):
    """Validate weight families and their textual specifications."""

    def test_parse_families(self) -> None:
        self.assertEqual(parse_lambda("pav").tag, "pav")
        self.assertEqual(parse_lambda("sqrt").tag, "power(1/2)")
        self.assertEqual(parse_lambda("power:2").tag, "power(2)")
        self.assertEqual(parse_lambda("power:0.5").exponent, Fraction(1, 2))
        custom = parse_lambda("custom:1,1/2,1/4")
        self.assertEqual(custom.weight(3), Fraction(1, 4))
        self.assertEqual(custom.max_length, 3)

    def test_parse_rejects_unknown(self) -> None:
        for text in ("harmonicish", "power:x", "custom:1,2", "power:-1"):
            with self.subTest(text=text), self.assertRaises(InvalidInputError):
                parse_lambda(text)

    def test_exact_weights(self) -> None:
        weights = LambdaWeights.pav()
        self.assertEqual(weights.cumulative(3), [0, 1, Fraction(3, 2), Fraction(11, 6)])
        self.assertEqual(LambdaWeights.power(2).weight(3), Fraction(1, 9))
        self.assertIsInstance(LambdaWeights.power(Fraction(1, 2)).weight(4), float)
        self.assertAlmostEqual(LambdaWeights.power(Fraction(1, 2)).weight(4), 0.5)

    def test_shape_checks(self) -> None:
        self.assertTrue(LambdaWeights.pav().is_non_increasing(10))
        self.assertTrue(LambdaWeights.pav().is_convex(10))
        self.assertFalse(LambdaWeights.custom([1, 1, Fraction(1, 2)]).is_convex(3))
        with self.assertRaises(InvalidInputError):
            LambdaWeights.custom([1, 2])
        with self.assertRaises(InvalidInputError):
            LambdaWeights.custom([1]).cumulative(2)

    def test_continuous_extension(self) -> None:
        self.assertAlmostEqual(LambdaWeights.pav().evaluate(2.5), 0.4)
        custom = LambdaWeights.custom([1, Fraction(1, 2)])
        self.assertAlmostEqual(custom.evaluate(1.5), 0.75)
        self.assertAlmostEqual(custom.evaluate(0.5), 1.25)


class TestTieBreak(unittest.TestCase):
    """Validate the tie-breaking policies."""

    def test_candidate_choice(self) -> None:
        self.assertEqual(TieBreak.lexmin().choose([3, 1, 2]), 1)
        self.assertEqual(TieBreak.lexmax().choose([3, 1, 2]), 3)
        self.assertEqual(TieBreak.adversarial([2, 3]).choose([1, 2, 3]), 2)
        self.assertEqual(TieBreak.adversarial([7]).choose([1, 2, 3]), 1)

    def test_committee_choice(self) -> None:
        committees = [frozenset({1, 2}), frozenset({1, 3}), frozenset({3, 4})]
        self.assertEqual(TieBreak.lexmin().choose_committee(committees), frozenset({1, 2}))
        self.assertEqual(TieBreak.lexmax().choose_committee(committees), frozenset({3, 4}))
        adversarial = TieBreak.adversarial([3, 4])
        self.assertEqual(adversarial.choose_committee(committees), frozenset({3, 4}))

    def test_from_name(self) -> None:
        self.assertIs(TieBreak.from_name("LexMax").policy, TiePolicy.LEXMAX)
        with self.assertRaises(InvalidInputError):
            TieBreak.from_name("random")
        with self.assertRaises(InvalidInputError):
            TieBreak.from_name("adversarial")


class TestThieleRules(unittest.TestCase):
    """Validate exhaustive and sequential Thiele rules."""

    def test_thiele_score(self) -> None:
        profile = ApprovalProfile.build(3, [(2, [1, 2]), (1, [3])])
        self.assertEqual(thiele_score(profile, LambdaWeights.pav(), [1, 2]), 3)
        self.assertEqual(thiele_score(profile, LambdaWeights.pav(), [1, 3]), 3)
        self.assertEqual(thiele_score(profile, LambdaWeights.power(2), [1, 2]), Fraction(5, 2))

    def test_pav_unique_party_split(self) -> None:
        profile = gen_party_list([7, 3], 4)
        outcome = thiele_exact(profile, LambdaWeights.pav(), 4, exhaustive=True)
        self.assertEqual(outcome.committee, frozenset({1, 2, 3, 5}))
        self.assertEqual(outcome.score, Fraction(95, 6))
        self.assertEqual(seats_by_block(outcome.committee, party_blocks(2, 4)), (3, 1))
        self.assertEqual(dhondt_apportionment([7, 3], 4), (3, 1))
        assert outcome.optimal is not None
        self.assertTrue(all(len(c & {1, 2, 3, 4}) == 3 for c in outcome.optimal))

    def test_tie_break_selects_among_optima(self) -> None:
        profile = ApprovalProfile.build(4, [(1, [1, 2]), (1, [3, 4])])
        self.assertEqual(pav(profile, 2), frozenset({1, 3}))
        self.assertEqual(pav(profile, 2, TieBreak.lexmax()), frozenset({2, 4}))

    def test_enumeration_budget(self) -> None:
        with self.assertRaises(BudgetExceededError) as context:
            thiele_exact(example1_profile(), LambdaWeights.pav(), 3, budget=100)
        self.assertEqual(context.exception.required, 4060)
        self.assertEqual(context.exception.budget, 100)

    def test_seq_pav_example1(self) -> None:
        profile = example1_profile()
        committee, trace = seq_pav(profile, 10)
        self.assertEqual(seats_by_block(committee, party_blocks(3, 10)), (6, 3, 1))
        self.assertEqual(trace.steps[0].value, Fraction(3, 5))
        self.assertEqual(trace.to_log_lines()[0], "1 1 3/5 {1,2,3,4,5,6,7,8,9,10}")
        self.assertEqual(trace.rule, "seq-pav")
        self.assertEqual(len(trace.order), 10)

    def test_seq_thiele_rule_name_and_size_checks(self) -> None:
        profile = example1_profile()
        _, trace = seq_thiele(profile, LambdaWeights.power(2), 2)
        self.assertEqual(trace.rule, "seq-thiele[power(2)]")
        with self.assertRaises(InvalidInputError):
            seq_pav(profile, 31)

    def test_max_last_step_gain_dominates_every_branch(self) -> None:
        rng = random.Random(11)
        weights = LambdaWeights.pav()
        for _ in range(200):
            profile = random_profile(rng, max_voters=8, max_candidates=6)
            k = rng.randint(1, profile.num_candidates)
            best = max_last_step_gain(profile, weights, k, budget=10_000)
            for policy in (TieBreak.lexmin(), TieBreak.lexmax()):
                _, trace = seq_thiele(profile, weights, k, policy)
                self.assertGreaterEqual(best, trace.steps[-1].value)

    def test_max_last_step_gain_budget(self) -> None:
        profile = ApprovalProfile.build(6, [(1, range(1, 7))])
        with self.assertRaises(BudgetExceededError):
            max_last_step_gain(profile, LambdaWeights.pav(), 3, budget=5)


class TestPhragmenRules(unittest.TestCase):
    """Validate the credit and load formulations and the maximal rule."""

    def test_example1_dhondt_split(self) -> None:
        profile = example1_profile()
        committee, trace = seq_phragmen_credit(profile, 10)
        self.assertEqual(seats_by_block(committee, party_blocks(3, 10)), (6, 3, 1))
        self.assertEqual(dhondt_apportionment([60, 30, 10], 10), (6, 3, 1))
        self.assertEqual(trace.steps[0].value, Fraction(5, 3))
        load_committee, load_trace = seq_phragmen_load(profile, 10)
        self.assertEqual(load_committee, committee)
        self.assertEqual(load_trace.steps[0].value, Fraction(1, 60))

    def test_credit_and_load_processes_agree(self) -> None:
        rng = random.Random(2024)
        checked = 0
        while checked < 1000:
            profile = random_profile(rng, max_voters=12, max_candidates=8)
            available = len(approved_candidates(profile))
            k = rng.randint(1, min(5, available))
            n = profile.total_weight
            credit_committee, credit_trace = seq_phragmen_credit(profile, k)
            load_committee, load_trace = seq_phragmen_load(profile, k)
            self.assertEqual(credit_trace.order, load_trace.order)
            self.assertEqual(credit_committee, load_committee)
            for credit_step, load_step in zip(credit_trace.steps, load_trace.steps, strict=True):
                self.assertEqual(credit_step.tie_set, load_step.tie_set)
                self.assertEqual(credit_step.value, n * load_step.value)
                assert credit_step.state is not None and load_step.loads is not None
                expected = tuple(n * (load_step.value - load) for load in load_step.loads)
                self.assertEqual(credit_step.state.credits, expected)
            checked += 1

    def test_stall_reports_step(self) -> None:
        profile = ApprovalProfile.build(3, [(2, [1])])
        with self.assertRaises(StallError) as context:
            seq_phragmen_credit(profile, 2)
        self.assertEqual(context.exception.step, 2)
        with self.assertRaises(StallError):
            seq_phragmen_load(profile, 2)

    def test_optimal_max_load(self) -> None:
        profile = ApprovalProfile.build(3, [(1, [1]), (1, [1, 2])])
        self.assertEqual(optimal_max_load(profile, frozenset({1, 2})), 1)
        self.assertEqual(optimal_max_load(profile, frozenset({2})), 1)
        self.assertEqual(optimal_max_load(profile, frozenset({1})), Fraction(1, 2))
        self.assertIsNone(optimal_max_load(profile, frozenset({3})))

    def test_max_phragmen_prefers_spread_committee(self) -> None:
        profile = ApprovalProfile.build(3, [(1, [1, 2]), (1, [3])])
        outcome = max_phragmen(profile, 2)
        self.assertEqual(outcome.max_load, 1)
        self.assertEqual(outcome.committees, (frozenset({1, 3}), frozenset({2, 3})))

    def test_max_phragmen_needs_approved_candidates(self) -> None:
        profile = ApprovalProfile.build(3, [(1, [1])])
        with self.assertRaises(InvalidInputError):
            max_phragmen(profile, 2)


def lp_max_load(profile: ApprovalProfile, committee: frozenset[int]) -> Fraction:
    """Minimal maximal load of ``committee`` as a linear program over load shares."""
    members = sorted(committee)
    pairs = [(c, g) for c in members for g in profile.approver_groups(c)]
    builder = ProblemBuilder("max-load", len(members))
    shares = builder.add_block("share", pairs).start + np.arange(len(pairs))
    cap = builder.add_block("cap", [[0]]).start
    rows = builder.add_rows("unit", len(members), "=", 1.0)
    builder.add_terms(rows[[members.index(c) for c, _ in pairs]], shares, 1.0)
    rows = builder.add_rows("voter", len(profile.groups), "<=", 0.0)
    builder.add_terms(rows[[g for _, g in pairs]], shares, 1.0)
    group_weights = np.array([float(group.weight) for group in profile.groups])
    builder.add_terms(rows, np.full(rows.size, cap), -group_weights)
    objective = np.zeros(builder.num_variables)
    objective[cap] = -1.0
    solution = solve_lp(builder.build(objective), backend="simplex")
    assert solution.exact_objective is not None
    return -solution.exact_objective


def split_groups(rng: random.Random, profile: ApprovalProfile) -> ApprovalProfile:
    """Split every group into two unmerged parts of random rational size."""
    parts = []
    for group in profile.groups:
        share = Fraction(rng.randint(1, 9), 10)
        parts.append((group.weight * share, group.approved))
        parts.append((group.weight * (1 - share), group.approved))
    return ApprovalProfile.build(profile.num_candidates, parts, merge_duplicates=False)


class TestRuleInvariants(unittest.TestCase):
    """Randomized checks of properties every rule must keep."""

    def test_weight_splitting_changes_nothing(self) -> None:
        rng = random.Random(31)
        for _ in range(150):
            profile = random_profile(rng, max_voters=8, max_candidates=6)
            split = split_groups(rng, profile)
            self.assertEqual(len(split.groups), 2 * len(profile.groups))
            k = rng.randint(1, len(approved_candidates(profile)))

            committee, trace = seq_pav(profile, k)
            split_committee, split_trace = seq_pav(split, k)
            self.assertEqual(split_committee, committee)
            self.assertEqual(split_trace.steps, trace.steps)

            committee, trace = seq_phragmen_credit(profile, k)
            split_committee, split_trace = seq_phragmen_credit(split, k)
            self.assertEqual(split_committee, committee)
            self.assertEqual(split_trace.order, trace.order)
            self.assertEqual(split_trace.tie_sets, trace.tie_sets)
            self.assertEqual(
                [step.value for step in split_trace.steps], [step.value for step in trace.steps]
            )

            outcome = thiele_exact(profile, LambdaWeights.pav(), k, exhaustive=True)
            split_outcome = thiele_exact(split, LambdaWeights.pav(), k, exhaustive=True)
            self.assertEqual(split_outcome.score, outcome.score)
            self.assertEqual(split_outcome.optimal, outcome.optimal)

            self.assertEqual(max_phragmen(split, k), max_phragmen(profile, k))

    def test_scaling_keeps_ties_and_winners(self) -> None:
        rng = random.Random(47)
        for _ in range(150):
            profile = random_profile(rng, max_voters=8, max_candidates=6)
            factor = Fraction(rng.randint(1, 20), rng.randint(1, 20))
            scaled = profile.scaled(factor)
            k = rng.randint(1, len(approved_candidates(profile)))

            self.assertEqual(seq_pav(scaled, k), seq_pav(profile, k))
            self.assertEqual(seq_phragmen_credit(scaled, k), seq_phragmen_credit(profile, k))
            _, load_trace = seq_phragmen_load(profile, k)
            _, scaled_load_trace = seq_phragmen_load(scaled, k)
            self.assertEqual(scaled_load_trace.tie_sets, load_trace.tie_sets)
            self.assertEqual(scaled_load_trace.order, load_trace.order)
            self.assertEqual(scaled_load_trace.steps[-1].value * factor, load_trace.steps[-1].value)

            outcome = thiele_exact(profile, LambdaWeights.pav(), k, exhaustive=True)
            scaled_outcome = thiele_exact(scaled, LambdaWeights.pav(), k, exhaustive=True)
            self.assertEqual(scaled_outcome.optimal, outcome.optimal)
            self.assertEqual(scaled_outcome.score, outcome.score * factor)

            result = max_phragmen(profile, k)
            scaled_result = max_phragmen(scaled, k)
            self.assertEqual(scaled_result.committees, result.committees)
            self.assertEqual(scaled_result.max_load * factor, result.max_load)

    def test_sequential_gains_never_increase(self) -> None:
        rng = random.Random(53)
        for _ in range(200):
            profile = random_profile(rng)
            k = rng.randint(1, profile.num_candidates)
            for weights in (LambdaWeights.pav(), LambdaWeights.power(2)):
                _, trace = seq_thiele(profile, weights, k, TieBreak.lexmax())
                values = [step.value for step in trace.steps]
                self.assertTrue(all(a >= b for a, b in pairwise(values)), msg=values)

    def test_score_grows_with_the_committee(self) -> None:
        rng = random.Random(59)
        for _ in range(200):
            profile = random_profile(rng)
            order = list(profile.candidates)
            rng.shuffle(order)
            for weights in (LambdaWeights.pav(), LambdaWeights.power(2)):
                scores = [
                    thiele_score(profile, weights, order[:size]) for size in range(len(order) + 1)
                ]
                self.assertEqual(scores[0], 0)
                self.assertTrue(all(a <= b for a, b in pairwise(scores)), msg=scores)

    def test_optimal_max_load_matches_linear_program(self) -> None:
        rng = random.Random(61)
        for _ in range(100):
            profile = random_profile(rng, max_voters=10, max_candidates=7)
            candidates = approved_candidates(profile)
            committee = frozenset(rng.sample(candidates, rng.randint(1, min(4, len(candidates)))))
            self.assertEqual(optimal_max_load(profile, committee), lp_max_load(profile, committee))


class TestApportionment(unittest.TestCase):
    """Validate the D'Hondt oracle."""

    def test_ties_go_to_lower_index(self) -> None:
        self.assertEqual(dhondt_apportionment([1, 1], 1), (1, 0))
        self.assertEqual(dhondt_apportionment([2, 1], 3), (2, 1))

    def test_invalid_input(self) -> None:
        with self.assertRaises(InvalidInputError):
            dhondt_apportionment([], 2)
        with self.assertRaises(InvalidInputError):
            dhondt_apportionment([1, 0], 2)

    def test_sequential_rules_match_dhondt_on_party_lists(self) -> None:
        rng = random.Random(5)
        for _ in range(50):
            weights = [rng.randint(1, 20) for _ in range(rng.randint(2, 4))]
            seats = rng.randint(1, 6)
            profile = gen_party_list(weights, seats)
            blocks = party_blocks(len(weights), seats)
            expected = dhondt_apportionment(weights, seats)
            pav_committee, _ = seq_pav(profile, seats)
            phragmen_committee, _ = seq_phragmen_credit(profile, seats)
            self.assertEqual(seats_by_block(pav_committee, blocks), expected)
            self.assertEqual(seats_by_block(phragmen_committee, blocks), expected)


if __name__ == "__main__":
    unittest.main()
