"""Integration tests for CLI command flow."""

from __future__ import annotations

import json
import tempfile
import unittest
from pathlib import Path

from typer.testing import CliRunner

from abcprop.cli import app
from abcprop.core.gen.party import gen_party_list
from abcprop.core.model.io import example1_profile, read_profile_file
from abcprop.tests.helpers import write_profile_to


def _lines(output: str) -> list[str]:
    return [line.strip() for line in output.splitlines()]


def _value(output: str, key: str) -> str:
    """Return the value of the first ``key=value`` line."""
    prefix = f"{key}="
    return next(line[len(prefix) :] for line in _lines(output) if line.startswith(prefix))


class TestElectAndAudit(unittest.TestCase):
    """Validate rule execution and committee audits on fixed profiles."""

    def setUp(self) -> None:
        self.runner = CliRunner()
        self.temp_dir = tempfile.TemporaryDirectory()
        self.root = Path(self.temp_dir.name)
        self.example1 = write_profile_to(self.root, example1_profile(), "example1.abc")

    def tearDown(self) -> None:
        self.temp_dir.cleanup()

    def test_seq_pav_party_seats(self) -> None:
        result = self.runner.invoke(
            app,
            [
                "elect",
                "--file",
                str(self.example1),
                "-k",
                "10",
                "--rule",
                "seq-pav",
                "--party-size",
                "10",
                "--trace",
                "--exact",
            ],
        )
        self.assertEqual(result.exit_code, 0, msg=result.output)
        self.assertEqual(_value(result.output, "committee"), "1 2 3 4 5 6 11 12 13 21")
        self.assertEqual(_value(result.output, "seats"), "6 3 1")
        self.assertEqual(_value(result.output, "trace"), "1 1 3/5 {1,2,3,4,5,6,7,8,9,10}")

    def test_pav_on_party_list(self) -> None:
        path = write_profile_to(self.root, gen_party_list([7, 3], 4), "parties.abc")
        result = self.runner.invoke(
            app, ["elect", "--file", str(path), "-k", "4", "--rule", "pav", "--exact"]
        )
        self.assertEqual(result.exit_code, 0, msg=result.output)
        self.assertEqual(_value(result.output, "committee"), "1 2 3 5")
        self.assertEqual(_value(result.output, "score"), "95/6")
        self.assertEqual(_value(result.output, "approval_score"), "24")

    def test_trace_csv(self) -> None:
        result = self.runner.invoke(
            app,
            [
                "elect",
                "--file",
                str(self.example1),
                "-k",
                "3",
                "--rule",
                "seq-phragmen",
                "--format",
                "csv",
            ],
        )
        self.assertEqual(result.exit_code, 0, msg=result.output)
        lines = _lines(result.stdout)
        header = lines.index("step,candidate,value,tie_set")
        rows = [line for line in lines[header + 1 :] if line[:1].isdigit()]
        self.assertEqual([row.split(",")[0] for row in rows], ["1", "2", "3"])

    def test_audit_reports_ignored_majority(self) -> None:
        result = self.runner.invoke(
            app,
            [
                "audit",
                "--file",
                str(self.example1),
                "-k",
                "10",
                "--committee",
                "11,12,13,14,15,16,17,18,19,20",
                "--query",
                "6:5",
            ],
        )
        self.assertEqual(result.exit_code, 0, msg=result.output)
        self.assertEqual(_value(result.output, "utilitarian_ratio"), "0.5")
        self.assertEqual(_value(result.output, "min_satisfaction[ell=6,g=5]"), "0")
        self.assertTrue(_value(result.output, "worst_violation").startswith("ell=6,"))
        self.assertEqual(_value(result.output, "ejr"), "violated")
        self.assertEqual(_value(result.output, "ejr_ell"), "1")

    def test_audit_accepts_proportional_committee(self) -> None:
        result = self.runner.invoke(
            app,
            [
                "audit",
                "--file",
                str(self.example1),
                "-k",
                "10",
                "--committee",
                "1,2,3,4,5,6,11,12,13,21",
            ],
        )
        self.assertEqual(result.exit_code, 0, msg=result.output)
        self.assertEqual(_value(result.output, "violations"), "0")
        self.assertEqual(_value(result.output, "ejr"), "satisfied")


class TestBoundsAndLp(unittest.TestCase):
    """Validate the analytic bounds and LP commands."""

    def setUp(self) -> None:
        self.runner = CliRunner()

    def _bound(self, *args: str) -> str:
        result = self.runner.invoke(app, ["bounds", *args])
        self.assertEqual(result.exit_code, 0, msg=result.output)
        return result.output

    def test_bound_values(self) -> None:
        cases = [
            (("--rule", "phragmen", "--upper", "-l", "2", "-k", "10", "--exact"), "value", "9/7"),
            (("--rule", "phragmen", "--lower", "-l", "3"), "value", "1"),
            (("--rule", "thiele", "-l", "3", "-k", "10"), "value", "2.3"),
            (("--rule", "thiele", "--efficiency", "-k", "4"), "guarantee", "0.280776"),
            (
                ("--rule", "seq-pav", "-k", "3", "--h", "9/8", "--upper", "--exact"),
                "value",
                "8/9",
            ),
        ]
        for args, key, expected in cases:
            with self.subTest(args=args):
                self.assertEqual(_value(self._bound(*args), key), expected)

    def test_lp_exact_with_exports(self) -> None:
        with tempfile.TemporaryDirectory() as temp_dir:
            root = Path(temp_dir)
            lp_path = root / "exact3.lp"
            profile_path = root / "worst3.abc"
            result = self.runner.invoke(
                app,
                [
                    "lp",
                    "-k",
                    "3",
                    "--exact",
                    "--write-lp",
                    str(lp_path),
                    "--profile-out",
                    str(profile_path),
                ],
            )
            self.assertEqual(result.exit_code, 0, msg=result.output)
            self.assertEqual(_value(result.output, "h"), "9/8")
            self.assertEqual(_value(result.output, "variables"), "7")
            self.assertEqual(_value(result.output, "backend"), "simplex")
            self.assertEqual(_value(result.output, "upper"), "8/9")
            self.assertTrue(lp_path.read_text(encoding="utf-8").startswith("\\* exact k=3 *\\"))
            self.assertEqual(read_profile_file(profile_path).num_candidates, 3)


class TestGen(unittest.TestCase):
    """Validate instance generation and replay."""

    def setUp(self) -> None:
        self.runner = CliRunner()

    def test_phragmen_hard(self) -> None:
        result = self.runner.invoke(
            app, ["gen", "--family", "phragmen-hard", "-l", "2", "-k", "10", "--exact"]
        )
        self.assertEqual(result.exit_code, 0, msg=result.output)
        self.assertEqual(_value(result.output, "predicted"), "9/7")
        self.assertEqual(_value(result.output, "t"), "5/4")
        self.assertIn("m=22", _lines(result.output))

    def test_maxphragmen_tie_check(self) -> None:
        result = self.runner.invoke(
            app, ["gen", "--family", "maxphragmen-tie", "-k", "4", "--block", "3", "--check"]
        )
        self.assertEqual(result.exit_code, 0, msg=result.output)
        self.assertEqual(_value(result.output, "rule"), "max-phragmen")
        self.assertEqual(_value(result.output, "committee"), _value(result.output, "W2"))
        self.assertEqual(_value(result.output, "satisfaction"), "1")

    def test_party_list_to_file(self) -> None:
        with tempfile.TemporaryDirectory() as temp_dir:
            output = Path(temp_dir) / "parties.abc"
            result = self.runner.invoke(
                app,
                [
                    "gen",
                    "--family",
                    "party-list",
                    "--parties",
                    "7,3",
                    "--party-size",
                    "4",
                    "-k",
                    "4",
                    "--output",
                    str(output),
                ],
            )
            self.assertEqual(result.exit_code, 0, msg=result.output)
            self.assertEqual(_value(result.output, "dhondt_seats"), "3 1")
            self.assertEqual(output.read_text(encoding="utf-8").splitlines()[0], "m=8")


class TestReproduction(unittest.TestCase):
    """Validate table and curve artifacts."""

    def setUp(self) -> None:
        self.runner = CliRunner()

    def test_table_writes_artifacts(self) -> None:
        with tempfile.TemporaryDirectory() as temp_dir:
            output_dir = Path(temp_dir) / "artifacts"
            result = self.runner.invoke(
                app,
                [
                    "table",
                    "--kind",
                    "seqpav-exact",
                    "--k-range",
                    "1:3",
                    "--output-dir",
                    str(output_dir),
                    "--exact",
                ],
            )
            self.assertEqual(result.exit_code, 0, msg=result.output)
            self.assertEqual(_value(result.output, "rows"), "3")
            self.assertTrue(any(line.startswith("k=3 h=9/8 ") for line in _lines(result.output)))

            csv_path = Path(_value(result.output, "csv"))
            self.assertEqual(csv_path, output_dir / "table_seqpav-exact.csv")
            self.assertTrue(Path(_value(result.output, "summary")).exists())
            manifest = json.loads(
                Path(_value(result.output, "manifest")).read_text(encoding="utf-8")
            )
            self.assertEqual(manifest["status"], "success")
            self.assertEqual(manifest["command"], "table")
            self.assertEqual(manifest["context"]["k_values"], [1, 2, 3])
            self.assertLess(manifest["result"]["summary"]["max_abs_delta"], 1e-3)
            self.assertIn("lp:", manifest["result"]["extra"]["config_yaml"])

    def test_curve_writes_series(self) -> None:
        with tempfile.TemporaryDirectory() as temp_dir:
            result = self.runner.invoke(
                app,
                [
                    "curve",
                    "--kind",
                    "phragmen-upper-vs-k",
                    "--range",
                    "4:10",
                    "-l",
                    "2",
                    "--output-dir",
                    temp_dir,
                ],
            )
            self.assertEqual(result.exit_code, 0, msg=result.output)
            self.assertEqual(_value(result.output, "rows"), "10")
            manifest = json.loads(
                Path(_value(result.output, "manifest")).read_text(encoding="utf-8")
            )
            self.assertEqual(
                manifest["result"]["extra"]["series"],
                ["seq-phragmen-lower", "seq-phragmen-upper"],
            )


if __name__ == "__main__":
    unittest.main()
