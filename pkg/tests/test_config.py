import os
import tempfile
import unittest

import yaml
from pydantic import ValidationError

from utils.config_validator import (
    CYCLE_CAP_ENV,
    BenchCase,
    ConfigValidator,
    InstanceParams,
    LoggingConfig,
    OracleBudget,
    SolverConfig,
)
from utils.path_utils import DEFAULT_BENCH_SUITE, default_solver_config, ensure_directory_exists, project_path


class TestConfigModels(unittest.TestCase):
    """Validation of the configuration schemas."""

    def test_defaults(self):
        solver = SolverConfig()
        self.assertEqual(solver.cycle_cap, 1_000_000)
        self.assertTrue(solver.merge_cycles)
        self.assertFalse(solver.merge_equal_edge_sets)
        budget = OracleBudget()
        self.assertEqual((budget.max_feasible_edges, budget.max_cover_cycles), (20, 16))

    def test_rejected_values(self):
        with self.assertRaises(ValidationError):
            SolverConfig(cycle_cap=0)
        with self.assertRaises(ValidationError):
            OracleBudget(time_limit_s=0)
        with self.assertRaises(ValidationError):
            InstanceParams(edge_prob=1.5)
        with self.assertRaises(ValidationError):
            InstanceParams(cost_min=4, cost_max=3)
        with self.assertRaises(ValidationError):
            LoggingConfig(level="LOUD")
        with self.assertRaises(ValidationError):
            BenchCase(kind="ring", algos=["potential"], seeds=[1])
        with self.assertRaises(ValidationError):
            BenchCase(kind="dag", algos=[], seeds=[1])

    def test_log_level_is_normalised(self):
        self.assertEqual(LoggingConfig(level="debug").level, "DEBUG")


class TestConfigFiles(unittest.TestCase):
    """YAML loading and the cycle-cap override."""

    def test_bundled_solver_config(self):
        config = ConfigValidator.load_solver_config(default_solver_config(), env={})
        self.assertEqual(config["solver"], SolverConfig())
        self.assertEqual(config["oracle"], OracleBudget())
        self.assertEqual(config["logging"].level, "WARNING")

    def test_bundled_keys_match_the_models(self):
        """Every key in the bundled solver file is a field the solvers read."""
        with open(default_solver_config()) as f:
            raw = yaml.safe_load(f)
        for section, model in (("solver", SolverConfig), ("oracle", OracleBudget), ("generator", InstanceParams)):
            self.assertLessEqual(set(raw[section]), set(model.__fields__), section)
        self.assertNotIn("tolerance", SolverConfig().dict())

    def test_missing_sections_use_defaults(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "solver.yaml")
            with open(path, "w") as f:
                f.write("solver:\n  merge_cycles: false\n")
            config = ConfigValidator.load_solver_config(path, env={})
        self.assertFalse(config["solver"].merge_cycles)
        self.assertEqual(config["generator"], InstanceParams())

    def test_missing_file(self):
        with self.assertRaises(FileNotFoundError):
            ConfigValidator.load_and_validate_yaml("/nonexistent/solver.yaml")
        with self.assertRaises(FileNotFoundError):
            ConfigValidator.load_bench_suite("/nonexistent/suite.yaml")

    def test_cycle_cap_override(self):
        config = ConfigValidator.load_solver_config(None, env={CYCLE_CAP_ENV: "250"})
        self.assertEqual(config["solver"].cycle_cap, 250)
        with self.assertRaises(ValueError):
            ConfigValidator.load_solver_config(None, env={CYCLE_CAP_ENV: "lots"})
        with self.assertRaises(ValidationError):
            ConfigValidator.load_solver_config(None, env={CYCLE_CAP_ENV: "-1"})

    def test_bundled_bench_suite(self):
        suite = ConfigValidator.load_bench_suite(project_path(DEFAULT_BENCH_SUITE))
        rows = suite.rows()
        self.assertEqual(rows[0][:2], ("selfdamped", 1))
        self.assertEqual(len(rows), sum(len(c.seeds) * len(c.algos) for c in suite.cases))
        self.assertEqual(suite.oracle.max_feasible_edges, 12)

    def test_ensure_directory_exists(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = ensure_directory_exists("a/b", base_dir=tmp)
            self.assertTrue(os.path.isdir(path))


if __name__ == '__main__':
    unittest.main()
