"""Tests for YAML configuration loading."""

from __future__ import annotations

import os
import tempfile
import textwrap
import unittest
from pathlib import Path
from unittest.mock import patch

import yaml

from abcprop.core.config import default_config, dump_config_to_yaml, load_config
from abcprop.core.utils.env import load_dotenv
from abcprop.core.utils.errors import ConfigLoadError

EXAMPLE_CONFIG = Path(__file__).resolve().parents[1] / "configs" / "example.yaml"


class TestLoadConfig(unittest.TestCase):
    """Validate defaults, validation and path resolution."""

    def test_defaults(self) -> None:
        with patch.dict(os.environ, {}, clear=False):
            os.environ.pop("ABC_BUDGET", None)
            config = default_config()
        self.assertEqual(config.enumeration.budget, 10_000_000)
        self.assertEqual(config.rules.tie_break, "lexmin")
        self.assertEqual(config.lp.backend, "auto")
        self.assertEqual(config.output.significant_digits, 6)
        self.assertTrue(config.output.artifacts_dir.is_absolute())

    def test_example_file(self) -> None:
        config = load_config(EXAMPLE_CONFIG)
        self.assertEqual(config.lp.exact_max_k, 14)
        self.assertEqual(config.audit.seed_groups, 3)
        self.assertEqual(
            config.output.artifacts_dir, (EXAMPLE_CONFIG.parent / "../artifacts").resolve()
        )

    def test_relative_artifacts_dir(self) -> None:
        with tempfile.TemporaryDirectory() as temp_dir:
            config_path = Path(temp_dir) / "nested" / "config.yaml"
            config_path.parent.mkdir()
            config_path.write_text("output:\n  artifacts_dir: out\n", encoding="utf-8")
            config = load_config(config_path)
            self.assertEqual(config.output.artifacts_dir, (config_path.parent / "out").resolve())

    def test_missing_file(self) -> None:
        with tempfile.TemporaryDirectory() as temp_dir, self.assertRaises(ConfigLoadError):
            load_config(Path(temp_dir) / "missing.yaml")

    def test_invalid_documents(self) -> None:
        documents = {
            "broken": "lp: [unclosed\n",
            "list_root": "- 1\n- 2\n",
            "bad_digits": "output:\n  significant_digits: 0\n",
            "bad_tie": "rules:\n  tie_break: adversarial\n",
            "bad_backend": "lp:\n  backend: glpk\n",
        }
        with tempfile.TemporaryDirectory() as temp_dir:
            for name, text in documents.items():
                path = Path(temp_dir) / f"{name}.yaml"
                path.write_text(text, encoding="utf-8")
                with self.subTest(name=name), self.assertRaises(ConfigLoadError):
                    load_config(path)

    def test_budget_override(self) -> None:
        with patch.dict(os.environ, {"ABC_BUDGET": "1_000"}):
            self.assertEqual(load_config(EXAMPLE_CONFIG).enumeration.budget, 1000)
        with patch.dict(os.environ, {"ABC_BUDGET": "lots"}), self.assertRaises(ConfigLoadError):
            default_config()

    def test_dump_is_loadable(self) -> None:
        config = load_config(EXAMPLE_CONFIG)
        payload = yaml.safe_load(dump_config_to_yaml(config))
        self.assertEqual(payload["lp"]["max_denominator"], 1_000_000)
        self.assertEqual(payload["output"]["artifacts_dir"], str(config.output.artifacts_dir))


class TestDotenv(unittest.TestCase):
    """Validate the dotenv reader."""

    def test_load_dotenv(self) -> None:
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / ".env"
            path.write_text(
                textwrap.dedent("""
                    # comment
                    export ABCPROP_TEST_A='quoted'
                    ABCPROP_TEST_B=plain
                    """),
                encoding="utf-8",
            )
            with patch.dict(os.environ, {"ABCPROP_TEST_B": "kept"}):
                loaded = load_dotenv(path)
                self.assertEqual(loaded, {"ABCPROP_TEST_A": "quoted"})
                self.assertEqual(os.environ["ABCPROP_TEST_B"], "kept")
            os.environ.pop("ABCPROP_TEST_A", None)

    def test_rejects_malformed_lines(self) -> None:
        with tempfile.TemporaryDirectory() as temp_dir:
            path = Path(temp_dir) / ".env"
            path.write_text("NOT_AN_ASSIGNMENT\n", encoding="utf-8")
            with self.assertRaises(ConfigLoadError):
                load_dotenv(path)


if __name__ == "__main__":
    unittest.main()
