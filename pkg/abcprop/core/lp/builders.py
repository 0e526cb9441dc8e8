"""Builders for the sequential-PAV worst-case linear programs."""

from __future__ import annotations

import numpy as np

from abcprop.core.lp.problem import LpProblem, ProblemBuilder
from abcprop.core.utils.errors import BudgetExceededError, InvalidInputError
from abcprop.core.utils.logging import get_logger

logger = get_logger(__name__)

DEFAULT_EXACT_MAX_K = 14
DEFAULT_RELAXED_MAX_K = 400
DEFAULT_ABSTRACT_MAX_K = 12


def _check_k(k: int, max_k: int, what: str) -> None:
    if k < 1:
        raise InvalidInputError(f"{what} needs k >= 1, got {k}.")
    if k > max_k:
        raise BudgetExceededError(f"{what} for k={k}", k, max_k)


def _membership(masks: np.ndarray, k: int) -> np.ndarray:
    """``member[t, c]`` is 1 when candidate ``c + 1`` belongs to the set encoded by ``masks[t]``."""
    return ((masks[:, None] >> np.arange(k)[None, :]) & 1).astype(np.int64)


def _safe_ratio(numerator: np.ndarray, denominator: np.ndarray) -> np.ndarray:
    out = np.zeros(numerator.shape, dtype=float)
    np.divide(numerator, denominator, out=out, where=denominator > 0)
    return out


def build_exact_lp(
    k: int, include_empty: bool = False, max_k: int = DEFAULT_EXACT_MAX_K
) -> LpProblem:
    """
    Worst-case last-step gain of sequential PAV over all profiles on ``k`` candidates.

    Variable ``x_M`` is the fraction of voters whose approval set is encoded by the bitmask
    ``M`` (bit ``c - 1`` set when candidate ``c`` is approved). Candidates are elected in the
    order ``1..k``; the rows demand that at step ``i`` candidate ``i`` gains at least as much
    as any later candidate ``j``.

    Args:
        k: Committee size.
        include_empty: Also model voters approving nobody.
        max_k: Size budget.

    Returns:
        Problem maximizing ``k * Delta``.
    """
    _check_k(k, max_k, "exact LP")
    masks = np.arange(0 if include_empty else 1, 2**k, dtype=np.int64)
    member = _membership(masks, k)
    prefix = np.cumsum(member, axis=1)
    sizes = prefix[:, -1]

    builder = ProblemBuilder("exact", k)
    block = builder.add_block("x", masks)
    columns = block.start + np.arange(masks.size)

    total = builder.add_rows("sum", 1, "=", 1.0)
    builder.add_terms(np.full(masks.size, total[0]), columns, 1.0)

    pairs = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    dominance = builder.add_rows("dominance", len(pairs), ">=", 0.0)
    for row, (i, j) in zip(dominance, pairs, strict=True):
        before = prefix[:, i - 2] if i >= 2 else np.zeros(masks.size, dtype=np.int64)
        gain_i = _safe_ratio(member[:, i - 1], prefix[:, i - 1])
        gain_j = _safe_ratio(member[:, j - 1], before + member[:, j - 1])
        coefficients = gain_i - gain_j
        nonzero = np.flatnonzero(coefficients)
        builder.add_terms(np.full(nonzero.size, row), columns[nonzero], coefficients[nonzero])

    objective = k * _safe_ratio(member[:, k - 1], sizes)
    builder.metadata.update({"pairs": len(pairs), "include_empty": include_empty})
    problem = builder.build(objective)
    logger.debug("exact LP k=%d: %d variables", k, problem.num_variables)
    return problem


def _expand(
    first: np.ndarray, second: np.ndarray, low: np.ndarray | int, high: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Expand ``(first, second)`` pairs into triples with ``p`` running over ``[low, high]``.

    Returns:
        Repeated first indices, second indices, ``p`` values, and each pair's start offset.
    """
    low = np.broadcast_to(np.asarray(low, dtype=np.int64), first.shape)
    counts = np.clip(high - low + 1, 0, None)
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]]).astype(np.int64)
    total = int(counts.sum())
    rep_first = np.repeat(first, counts)
    rep_second = np.repeat(second, counts)
    p = np.arange(total, dtype=np.int64) - np.repeat(starts, counts) + np.repeat(low, counts)
    return rep_first, rep_second, p, starts


def _pairs(k: int, second_values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    first, second = np.meshgrid(np.arange(1, k + 1), second_values, indexing="ij")
    return first.ravel(), second.ravel()


class _RelaxedIndex:
    """Column lookup for the ``a``, ``b``, ``c`` and ``d`` families of the relaxed LP."""

    def __init__(self, builder: ProblemBuilder, k: int) -> None:
        self.k = k
        steps = np.arange(1, k + 1)
        self.a = builder.add_block("a", steps).start

        bi, bj = _pairs(k, np.arange(0, k + 1))
        b_first, b_second, b_p, b_starts = _expand(bi, bj, 0, np.minimum(bi, bj))
        block = builder.add_block("b", np.column_stack([b_first, b_second, b_p]))
        self.b_start = block.start
        self.b_base = np.full((k + 1, k + 1), -1, dtype=np.int64)
        self.b_base[bi, bj] = b_starts
        self.b_triples = (b_first, b_second, b_p)

        ci, cj = _pairs(k, steps)
        c_first, c_second, c_p, c_starts = _expand(ci, cj, 1, np.minimum(ci, cj))
        block = builder.add_block("c", np.column_stack([c_first, c_second, c_p]))
        self.c_start = block.start
        self.c_base = np.full((k + 1, k + 1), -1, dtype=np.int64)
        self.c_base[ci, cj] = c_starts
        self.c_triples = (c_first, c_second, c_p)

        self.d = builder.add_block("d", steps).start

    def a_col(self, i: np.ndarray | int) -> np.ndarray:
        return self.a + np.asarray(i) - 1

    def b_col(self, i: np.ndarray, j: np.ndarray, p: np.ndarray) -> np.ndarray:
        return self.b_start + self.b_base[i, j] + p

    def c_col(self, i: np.ndarray, j: np.ndarray, p: np.ndarray) -> np.ndarray:
        return self.c_start + self.c_base[i, j] + p - 1

    def d_col(self, j: np.ndarray | int) -> np.ndarray:
        return self.d + np.asarray(j) - 1


def _equalities(
    builder: ProblemBuilder, label: str, terms: list[tuple[np.ndarray, float]], count: int
) -> None:
    """One ``= 0`` row per position; each term is a column array with a coefficient."""
    rows = builder.add_rows(label, count, "=", 0.0)
    for columns, coefficient in terms:
        builder.add_terms(rows, columns, coefficient)


def build_relaxed_lp(k: int, max_k: int = DEFAULT_RELAXED_MAX_K) -> LpProblem:
    """
    Polynomial relaxation of :func:`build_exact_lp`.

    Voters are aggregated by the number ``i`` of candidates they approve. ``b_i_j_p`` is the
    fraction approving ``i`` candidates with ``p`` representatives after step ``j``, ``c_i_j_p``
    the fraction moving from ``p - 1`` to ``p`` representatives at step ``j`` and ``d_j`` the
    normalized gain of step ``j``. A pigeonhole row bounds each step's gain from below by the
    average gain over the remaining candidates. Its optimum upper-bounds the exact LP's.

    Args:
        k: Committee size.
        max_k: Size budget.

    Returns:
        Problem maximizing ``k * d_k``.
    """
    _check_k(k, max_k, "relaxed LP")
    builder = ProblemBuilder("relaxed", k)
    index = _RelaxedIndex(builder, k)
    steps = np.arange(1, k + 1)

    rows = builder.add_rows("a_sum", 1, "=", 1.0)
    builder.add_terms(np.full(k, rows[0]), index.a_col(steps), 1.0)

    zeros = np.zeros(k, dtype=np.int64)
    full = np.full(k, k, dtype=np.int64)
    start_terms = [(index.b_col(steps, zeros, zeros), 1.0), (index.a_col(steps), -1.0)]
    _equalities(builder, "b_start", start_terms, k)
    end_terms = [(index.b_col(steps, full, steps), 1.0), (index.a_col(steps), -1.0)]
    _equalities(builder, "b_end", end_terms, k)

    unfinished, _, short_p, _ = _expand(steps, full, 0, steps - 1)
    builder.fix(index.b_col(unfinished, np.full(unfinished.size, k), short_p), 0.0)

    c_i, c_j, c_p = index.c_triples
    rows = builder.add_rows("c_cap", c_i.size, "<=", 0.0)
    builder.add_terms(rows, index.c_col(c_i, c_j, c_p), 1.0)
    builder.add_terms(rows, index.b_col(c_i, c_j - 1, c_p - 1), -1.0)

    pi, pj = _pairs(k, steps)
    diagonal = pj <= pi
    di, dj = pi[diagonal], pj[diagonal]
    first_terms = [(index.b_col(di, dj, dj), 1.0), (index.c_col(di, dj, dj), -1.0)]
    _equalities(builder, "d_first", first_terms, di.size)

    saturated = pi < pj
    si, sj = pi[saturated], pj[saturated]
    _equalities(
        builder,
        "d_saturated",
        [
            (index.b_col(si, sj, si), 1.0),
            (index.b_col(si, sj - 1, si), -1.0),
            (index.c_col(si, sj, si), -1.0),
        ],
        si.size,
    )

    zero_p = np.zeros(pi.size, dtype=np.int64)
    _equalities(
        builder,
        "d_unrepresented",
        [
            (index.b_col(pi, pj, zero_p), 1.0),
            (index.b_col(pi, pj - 1, zero_p), -1.0),
            (index.c_col(pi, pj, zero_p + 1), 1.0),
        ],
        pi.size,
    )

    mi, mj, mp, _ = _expand(pi, pj, 1, np.minimum(pi - 1, pj - 1))
    _equalities(
        builder,
        "d_flow",
        [
            (index.b_col(mi, mj, mp), 1.0),
            (index.b_col(mi, mj - 1, mp), -1.0),
            (index.c_col(mi, mj, mp + 1), 1.0),
            (index.c_col(mi, mj, mp), -1.0),
        ],
        mi.size,
    )

    rows = builder.add_rows("gain", k, "=", 0.0)
    builder.add_terms(rows, index.d_col(steps), 1.0)
    builder.add_terms(rows[c_j - 1], index.c_col(c_i, c_j, c_p), -1.0 / c_p)

    rows = builder.add_rows("pigeonhole", k, ">=", 0.0)
    builder.add_terms(rows, index.d_col(steps), 1.0)
    b_i, b_j, b_p = index.b_triples
    before = b_j < k
    gi, gj, gp = b_i[before], b_j[before], b_p[before]
    weights = (gi - gp) / (gp + 1) / (k - gj)
    builder.add_terms(rows[gj], index.b_col(gi, gj, gp), -weights)

    objective = np.zeros(builder.num_variables)
    objective[int(index.d_col(k))] = float(k)
    problem = builder.build(objective)
    logger.debug(
        "relaxed LP k=%d: %d variables, %d constraints",
        k,
        problem.num_variables,
        problem.num_constraints,
    )
    return problem


def build_abstract_f_lp(
    k: int, submodular: bool = False, max_k: int = DEFAULT_ABSTRACT_MAX_K
) -> LpProblem:
    """
    Worst case of a greedy rule driven by an abstract set function ``f``.

    ``f_M`` is the normalized value of the committee encoded by bitmask ``M``. The function is
    non-negative, monotone, vanishes on the empty committee, and the marginal contributions of
    the members of any committee sum to at most one. Greedy picks ``1..k`` in order; with
    ``submodular`` set, ``f`` must also have diminishing returns.

    Args:
        k: Committee size.
        submodular: Add the diminishing-returns rows.
        max_k: Size budget.

    Returns:
        Problem maximizing ``k * (f([k]) - f([k-1]))``.
    """
    _check_k(k, max_k, "abstract-f LP")
    masks = np.arange(0, 2**k, dtype=np.int64)
    member = _membership(masks, k).astype(bool)
    builder = ProblemBuilder("abstract-f-submodular" if submodular else "abstract-f", k)
    start = builder.add_block("f", masks).start
    builder.fix(np.array([start]), 0.0)

    base, candidate = np.nonzero(~member)
    bits = np.int64(1) << candidate
    rows = builder.add_rows("monotone", base.size, ">=", 0.0)
    builder.add_terms(rows, start + (base | bits), 1.0)
    builder.add_terms(rows, start + base, -1.0)

    nonempty = masks[1:]
    sizes = member[1:].sum(axis=1)
    rows = builder.add_rows("marginal_cap", nonempty.size, "<=", 1.0)
    builder.add_terms(rows, start + nonempty, sizes.astype(float))
    owner, removed = np.nonzero(member[1:])
    builder.add_terms(rows[owner], start + (nonempty[owner] ^ (np.int64(1) << removed)), -1.0)

    prefixes = [(1 << i) - 1 for i in range(k + 1)]
    pairs = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    if pairs:
        rows = builder.add_rows("greedy", len(pairs), ">=", 0.0)
        chosen = np.array([prefixes[i] for i, _ in pairs], dtype=np.int64)
        rival = np.array([prefixes[i - 1] | (1 << (j - 1)) for i, j in pairs], dtype=np.int64)
        builder.add_terms(rows, start + chosen, 1.0)
        builder.add_terms(rows, start + rival, -1.0)

    if submodular and k >= 2:
        low, high = np.triu_indices(k, 1)
        sets_list, which_list = [], []
        for position, (a, b) in enumerate(zip(low.tolist(), high.tolist(), strict=True)):
            free = masks[~member[:, a] & ~member[:, b]]
            sets_list.append(free)
            which_list.append(np.full(free.size, position, dtype=np.int64))
        sets = np.concatenate(sets_list)
        which = np.concatenate(which_list)
        bit_a = np.int64(1) << low[which].astype(np.int64)
        bit_b = np.int64(1) << high[which].astype(np.int64)
        rows = builder.add_rows("submodular", sets.size, ">=", 0.0)
        builder.add_terms(rows, start + (sets | bit_a), 1.0)
        builder.add_terms(rows, start + (sets | bit_b), 1.0)
        builder.add_terms(rows, start + (sets | bit_a | bit_b), -1.0)
        builder.add_terms(rows, start + sets, -1.0)

    objective = np.zeros(masks.size)
    objective[start + prefixes[k]] += k
    objective[start + prefixes[k - 1]] -= k
    builder.metadata.update({"submodular": submodular})
    return builder.build(objective)
