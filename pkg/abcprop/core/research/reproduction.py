"""Reproduction harness for the sequential-PAV tables and the bound curves."""

from __future__ import annotations

import json
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational
from pathlib import Path
from typing import Any, Literal

import pandas as pd

from abcprop.core.bounds.phragmen import phragmen_lower, phragmen_upper
from abcprop.core.bounds.roots import DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE
from abcprop.core.bounds.thiele import (
    thiele_efficiency_lower,
    thiele_efficiency_upper,
    thiele_guarantee,
    thiele_upper,
)
from abcprop.core.config import BoundsConfig, LpConfig
from abcprop.core.lp.seqpav import h_seqpav
from abcprop.core.rules.weights import LambdaWeights
from abcprop.core.utils.errors import ArtifactError, InvalidInputError
from abcprop.core.utils.logging import get_logger
from abcprop.core.utils.numbers import format_value

logger = get_logger(__name__)

TableKind = Literal["seqpav-exact", "seqpav-relaxed", "abstract-f", "abstract-f-submodular"]
CurveKind = Literal[
    "seqpav-relaxed-vs-k",
    "phragmen-upper-vs-k",
    "thiele-guarantee-vs-ell",
    "efficiency-vs-k",
]
TABLE_KINDS: tuple[str, ...] = (
    "seqpav-exact",
    "seqpav-relaxed",
    "abstract-f",
    "abstract-f-submodular",
)
CURVE_KINDS: tuple[str, ...] = (
    "seqpav-relaxed-vs-k",
    "phragmen-upper-vs-k",
    "thiele-guarantee-vs-ell",
    "efficiency-vs-k",
)
_TABLE_METHODS: dict[str, str] = {
    "seqpav-exact": "exact",
    "seqpav-relaxed": "relaxed",
    "abstract-f": "abstract",
    "abstract-f-submodular": "abstract-submodular",
}

# Reference coefficients (multiples of ell), four decimals truncated.
REFERENCE_COEFFICIENTS: dict[str, dict[int, float]] = {
    "seqpav-exact": {
        1: 1.0, 2: 1.0, 3: 0.8888, 4: 0.8571, 5: 0.8372, 6: 0.8169, 7: 0.8064,
        8: 0.7979, 9: 0.7888, 10: 0.7825, 11: 0.7773, 12: 0.7719, 13: 0.7684,
        14: 0.7647, 15: 0.7616, 16: 0.7589, 17: 0.7563, 18: 0.7540, 19: 0.7522,
        20: 0.7503,
    },
    "seqpav-relaxed": {
        1: 1.0, 2: 1.0, 3: 0.8888, 4: 0.8461, 5: 0.8307, 6: 0.8131, 7: 0.7952,
        8: 0.7871, 9: 0.7771, 10: 0.7705, 11: 0.7643, 12: 0.7594, 13: 0.7548,
        14: 0.7512, 15: 0.7476, 16: 0.7441, 17: 0.7416, 18: 0.7396, 19: 0.7371,
        20: 0.7348, 50: 0.7085, 200: 0.694,
    },
    "abstract-f": {
        1: 1.0, 2: 1.0, 3: 0.6666, 4: 0.5, 5: 0.4, 6: 0.3333, 7: 0.2857, 8: 0.25,
        9: 0.2222, 10: 0.2, 11: 0.1818, 12: 0.1666,
    },
    "abstract-f-submodular": {
        1: 1.0, 2: 1.0, 3: 0.8888, 4: 0.8141, 5: 0.8372, 6: 0.7888, 7: 0.7667,
        8: 0.7492, 9: 0.7358, 10: 0.7246, 11: 0.7150, 12: 0.7066,
    },
}  # fmt: skip

DEFAULT_FAMILIES: tuple[LambdaWeights, ...] = (
    LambdaWeights.pav(),
    LambdaWeights.power(Fraction(1, 2)),
    LambdaWeights.power(Fraction(2, 3)),
    LambdaWeights.power(2),
)


@dataclass(frozen=True)
class CurveSettings:
    """Parameters of :func:`curve` besides the x grid."""

    ell: int = 1
    k: int = 10
    families: tuple[LambdaWeights, ...] = DEFAULT_FAMILIES
    tolerance: float = DEFAULT_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS

    @classmethod
    def from_config(
        cls,
        bounds: BoundsConfig,
        ell: int = 1,
        k: int = 10,
        families: tuple[LambdaWeights, ...] = DEFAULT_FAMILIES,
    ) -> CurveSettings:
        return cls(ell, k, families, bounds.tolerance, bounds.max_iterations)


def parse_k_range(text: str) -> list[int]:
    """
    Parse ``a:b`` (inclusive), ``a:b:step`` or a comma list into sorted unique positive integers.

    Args:
        text: Range specification.

    Returns:
        Sorted values.
    """
    spec = text.strip()
    try:
        if ":" in spec:
            parts = [int(part) for part in spec.split(":")]
            if len(parts) not in (2, 3):
                raise ValueError("expected a:b or a:b:step")
            step = parts[2] if len(parts) == 3 else 1
            if step < 1:
                raise ValueError("step must be >= 1")
            values = list(range(parts[0], parts[1] + 1, step))
        else:
            values = [int(part) for part in spec.split(",") if part.strip()]
    except ValueError as exc:
        raise InvalidInputError(f"invalid range '{text}': {exc}") from exc
    if not values or min(values) < 1:
        raise InvalidInputError(f"range '{text}' must select positive integers.")
    return sorted(set(values))


def seqpav_table(
    kind: TableKind | str,
    k_values: Sequence[int],
    settings: LpConfig | None = None,
    backend: str | None = None,
) -> pd.DataFrame:
    """
    Solve the worst-case LP of ``kind`` for every ``k`` and compare with reference values.

    Args:
        kind: ``seqpav-exact``, ``seqpav-relaxed``, ``abstract-f`` or ``abstract-f-submodular``.
        k_values: Committee sizes.
        settings: LP configuration.
        backend: Backend override.

    Returns:
        Frame with columns ``k, h, coefficient, reference, delta``; ``h`` keeps the exact
        optimum when the backend produced one, ``reference`` and ``delta`` are NaN for sizes
        without a reference value.
    """
    if kind not in _TABLE_METHODS:
        raise InvalidInputError(f"unknown table kind '{kind}'; expected one of {TABLE_KINDS}.")
    method = _TABLE_METHODS[kind]
    references = REFERENCE_COEFFICIENTS[kind]
    rows: list[dict[str, Any]] = []
    for k in sorted(set(k_values)):
        estimate = h_seqpav(k, method, settings=settings, backend=backend)
        reference = references.get(k, math.nan)
        rows.append(
            {
                "k": k,
                "h": estimate.h,
                "coefficient": estimate.coefficient,
                "reference": reference,
                "delta": estimate.coefficient - reference,
            }
        )
        logger.info("table %s k=%d coefficient=%.6f", kind, k, estimate.coefficient)
    return pd.DataFrame(rows, columns=["k", "h", "coefficient", "reference", "delta"])


def _seqpav_relaxed_curve(
    xs: Sequence[int], settings: LpConfig | None, backend: str | None
) -> list[dict[str, Any]]:
    rows: list[dict[str, Any]] = []
    for k in xs:
        estimate = h_seqpav(k, "relaxed", settings=settings, backend=backend)
        rows.append({"series": "seq-pav-relaxed", "x": k, "y": estimate.coefficient})
    return rows


def _phragmen_curve(xs: Sequence[int], ell: int) -> list[dict[str, Any]]:
    rows: list[dict[str, Any]] = []
    lower = phragmen_lower(ell).value
    for k in xs:
        rows.append({"series": "seq-phragmen-lower", "x": k, "y": lower})
        if 2 * ell < k and k % ell == 0:
            upper = phragmen_upper(ell, k).value
            rows.append({"series": "seq-phragmen-upper", "x": k, "y": upper})
    return rows


def _thiele_curve(xs: Sequence[int], params: CurveSettings) -> list[dict[str, Any]]:
    rows: list[dict[str, Any]] = []
    for weights in params.families:
        for ell in xs:
            if ell > params.k:
                continue
            lower = thiele_guarantee(
                weights, ell, params.k, params.tolerance, params.max_iterations
            )
            upper = thiele_upper(weights, ell, params.k, params.tolerance, params.max_iterations)
            rows.append({"series": f"{weights.tag}-lower", "x": ell, "y": lower.value})
            rows.append({"series": f"{weights.tag}-upper", "x": ell, "y": upper.value})
    return rows


def _efficiency_curve(xs: Sequence[int], params: CurveSettings) -> list[dict[str, Any]]:
    rows: list[dict[str, Any]] = []
    for weights in params.families:
        for k in xs:
            lower = thiele_efficiency_lower(weights, k, params.tolerance, params.max_iterations)
            upper = thiele_efficiency_upper(weights, k, params.tolerance, params.max_iterations)
            rows.append({"series": f"{weights.tag}-lower", "x": k, "y": lower.guarantee})
            rows.append({"series": f"{weights.tag}-upper", "x": k, "y": upper.guarantee})
    return rows


def curve(
    kind: CurveKind | str,
    xs: Sequence[int],
    params: CurveSettings | None = None,
    lp_settings: LpConfig | None = None,
    backend: str | None = None,
) -> pd.DataFrame:
    """
    Data series behind the bound plots.

    ``seqpav-relaxed-vs-k`` and ``efficiency-vs-k`` take ``k`` on the x axis,
    ``phragmen-upper-vs-k`` takes ``k`` at fixed ``params.ell`` (the lower bound is included as
    its own series) and ``thiele-guarantee-vs-ell`` takes ``ell`` at fixed ``params.k``.

    Args:
        kind: Curve name.
        xs: Grid of x values.
        params: Fixed parameters and lambda families.
        lp_settings: LP configuration for the sequential-PAV curve.
        backend: LP backend override.

    Returns:
        Long-format frame with columns ``series, x, y``.
    """
    params = params or CurveSettings()
    grid = sorted(set(xs))
    if kind == "seqpav-relaxed-vs-k":
        rows = _seqpav_relaxed_curve(grid, lp_settings, backend)
    elif kind == "phragmen-upper-vs-k":
        rows = _phragmen_curve(grid, params.ell)
    elif kind == "thiele-guarantee-vs-ell":
        rows = _thiele_curve(grid, params)
    elif kind == "efficiency-vs-k":
        rows = _efficiency_curve(grid, params)
    else:
        raise InvalidInputError(f"unknown curve kind '{kind}'; expected one of {CURVE_KINDS}.")
    logger.info("curve %s: %d points", kind, len(rows))
    return pd.DataFrame(rows, columns=["series", "x", "y"])


def render_frame(frame: pd.DataFrame, exact: bool = False, digits: int = 6) -> pd.DataFrame:
    """
    Stringify numeric cells deterministically.

    Integers print as-is, rationals as ``p/q`` under ``exact``, floats with ``digits``
    significant digits and NaN as an empty cell.
    """

    def render(value: Any) -> str:
        if isinstance(value, bool) or value is None:
            return "" if value is None else str(value)
        if isinstance(value, Integral):
            return str(int(value))
        if isinstance(value, Rational):
            return format_value(value, exact, digits)
        if isinstance(value, float):
            return "" if math.isnan(value) else format_value(value, False, digits)
        if hasattr(value, "item"):
            return render(value.item())
        return str(value)

    return frame.map(render)


def write_artifacts(
    frame: pd.DataFrame,
    output_dir: Path,
    name: str,
    exact: bool = False,
    digits: int = 6,
) -> tuple[Path, Path]:
    """
    Write ``<name>.csv`` and ``<name>_summary.json`` under ``output_dir``.

    Args:
        frame: Table or curve frame.
        output_dir: Artifact directory.
        name: File stem.
        exact: Render rationals exactly.
        digits: Significant digits for floats.

    Returns:
        CSV path and summary path.
    """
    csv_path = output_dir / f"{name}.csv"
    summary_path = output_dir / f"{name}_summary.json"
    summary: dict[str, Any] = {"name": name, "rows": int(len(frame)), "columns": list(frame)}
    if "delta" in frame:
        deltas = pd.to_numeric(frame["delta"], errors="coerce").abs().dropna()
        summary["max_abs_delta"] = float(deltas.max()) if not deltas.empty else None
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        render_frame(frame, exact, digits).to_csv(csv_path, index=False, lineterminator="\n")
        summary_path.write_text(
            json.dumps(summary, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
    except OSError as exc:
        raise ArtifactError(f"could not write artifacts under {output_dir}: {exc}") from exc
    return csv_path, summary_path
