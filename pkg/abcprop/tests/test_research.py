"""Tests for the table and curve reproduction harness."""

from __future__ import annotations

import json
import math
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

import pandas as pd

from abcprop.core.config import BoundsConfig
from abcprop.core.research import (
    CurveSettings,
    curve,
    parse_k_range,
    render_frame,
    seqpav_table,
    write_artifacts,
)
from abcprop.core.rules.weights import LambdaWeights
from abcprop.core.utils.errors import ArtifactError, InvalidInputError


class TestKRange(unittest.TestCase):
    """Validate range parsing."""

    def test_forms(self) -> None:
        self.assertEqual(parse_k_range("1:5"), [1, 2, 3, 4, 5])
        self.assertEqual(parse_k_range("2:10:4"), [2, 6, 10])
        self.assertEqual(parse_k_range(" 5,3,3 "), [3, 5])

    def test_rejects_bad_ranges(self) -> None:
        for text in ("0:2", "a:b", "1:2:3:4", "", "3:1", "1:5:0"):
            with self.subTest(text=text), self.assertRaises(InvalidInputError):
                parse_k_range(text)


class TestTables(unittest.TestCase):
    """Validate LP tables against the reference coefficients."""

    def test_exact_table(self) -> None:
        frame = seqpav_table("seqpav-exact", [3, 1, 2])
        self.assertEqual(list(frame["k"]), [1, 2, 3])
        self.assertEqual(list(frame["h"]), [1, 1, Fraction(9, 8)])
        self.assertTrue((frame["delta"].abs() < 1e-3).all())
        rendered = render_frame(frame, exact=True)
        self.assertEqual(rendered.loc[2, "h"], "9/8")

    def test_abstract_table(self) -> None:
        frame = seqpav_table("abstract-f", [3, 4])
        self.assertAlmostEqual(frame.loc[0, "coefficient"], 2 / 3)
        self.assertAlmostEqual(frame.loc[1, "coefficient"], 0.5)
        self.assertTrue((frame["delta"].abs() < 1e-3).all())

    def test_size_without_reference(self) -> None:
        frame = seqpav_table("seqpav-relaxed", [21])
        self.assertTrue(math.isnan(frame.loc[0, "reference"]))
        self.assertEqual(render_frame(frame).loc[0, "delta"], "")

    def test_unknown_kind(self) -> None:
        with self.assertRaises(InvalidInputError):
            seqpav_table("bogus", [1])


class TestCurves(unittest.TestCase):
    """Validate the bound curves."""

    def test_phragmen_curve(self) -> None:
        frame = curve("phragmen-upper-vs-k", [4, 5, 6, 10], CurveSettings(ell=2))
        self.assertEqual(list(frame["series"]).count("seq-phragmen-lower"), 4)
        upper = frame[frame["series"] == "seq-phragmen-upper"]
        self.assertEqual(list(upper["x"]), [6, 10])
        self.assertEqual(upper.iloc[-1]["y"], Fraction(9, 7))

    def test_thiele_curve_skips_large_ell(self) -> None:
        frame = curve("thiele-guarantee-vs-ell", range(1, 13))
        self.assertEqual(len(frame), 4 * 10 * 2)
        pav_lower = frame[(frame["series"] == "pav-lower") & (frame["x"] == 3)]
        self.assertAlmostEqual(pav_lower.iloc[0]["y"], 2.3, places=9)

    def test_efficiency_curve(self) -> None:
        params = CurveSettings.from_config(BoundsConfig(), families=(LambdaWeights.pav(),))
        frame = curve("efficiency-vs-k", [4], params)
        values = dict(zip(frame["series"], frame["y"], strict=True))
        self.assertAlmostEqual(values["pav-lower"], 0.280776, places=6)
        self.assertAlmostEqual(values["pav-upper"], 0.75, places=9)

    def test_seqpav_curve(self) -> None:
        frame = curve("seqpav-relaxed-vs-k", [1])
        self.assertEqual(list(frame["series"]), ["seq-pav-relaxed"])
        self.assertAlmostEqual(frame.loc[0, "y"], 1.0, places=7)

    def test_unknown_curve(self) -> None:
        with self.assertRaises(InvalidInputError):
            curve("bogus", [1])


class TestArtifacts(unittest.TestCase):
    """Validate rendering and artifact files."""

    def test_render_frame(self) -> None:
        frame = pd.DataFrame({"a": [1, Fraction(1, 3), 0.5, math.nan, "x", True]})
        self.assertEqual(
            list(render_frame(frame, exact=True)["a"]), ["1", "1/3", "0.5", "", "x", "True"]
        )
        self.assertEqual(render_frame(frame)["a"][1], "0.333333")

    def test_write_artifacts(self) -> None:
        frame = pd.DataFrame(
            {"k": [1, 2], "coefficient": [1.0, 0.9], "delta": [0.0, -0.002]}
        )
        with tempfile.TemporaryDirectory() as temp_dir:
            csv_path, summary_path = write_artifacts(frame, Path(temp_dir) / "out", "table_x")
            self.assertEqual(
                csv_path.read_text(encoding="utf-8").splitlines()[0], "k,coefficient,delta"
            )
            summary = json.loads(summary_path.read_text(encoding="utf-8"))
            self.assertEqual(summary["rows"], 2)
            self.assertAlmostEqual(summary["max_abs_delta"], 0.002)

    def test_write_artifacts_reports_os_errors(self) -> None:
        with tempfile.TemporaryDirectory() as temp_dir:
            blocker = Path(temp_dir) / "blocker"
            blocker.write_text("", encoding="utf-8")
            with self.assertRaises(ArtifactError):
                write_artifacts(pd.DataFrame({"x": [1]}), blocker, "curve")


if __name__ == "__main__":
    unittest.main()
