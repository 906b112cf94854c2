import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout

import pandas as pd

from cli.main import EXIT_ASSUMPTION, EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE, run
from core.system import CostMatrix, StructuredSystem
from instances.serialization import load_instance, save_instance
from utils.path_utils import fixture_path
from utils.visualization import GraphVisualizer

TINY_SUITE = """
name: "unit"
oracle:
  max_feasible_edges: 10
cases:
  - kind: "hierarchy"
    algos: ["hierarchical", "auto"]
    seeds: [1, 2]
    params:
      n: 3
      max_feasible_edges: 6
"""


def invoke(*argv):
    """Run the CLI and return (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue(), err.getvalue()


class CliTestCase(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write(self, name, sys, P):
        return str(save_instance(os.path.join(self.tmp.name, name), sys, P))


class TestSolveCommand(CliTestCase):
    """sfsel solve"""

    def test_hierarchical_json(self):
        code, out, err = invoke("solve", fixture_path("fig7.sfsi.json"), "--algo", "hierarchical", "--format", "json")
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(out)
        self.assertEqual(payload["cost"], 5.0)
        self.assertEqual(payload["links"], ["u1:y4", "u2:y6", "u5:y5"])
        self.assertTrue(payload["certificate"]["passed"])
        self.assertNotIn("elapsed_s", payload["stats"])
        self.assertIn("route: hierarchical", err)

    def test_auto_prefers_hierarchy(self):
        code, out, err = invoke("solve", fixture_path("fig7.sfsi.json"))
        self.assertEqual(code, EXIT_OK)
        self.assertIn("cost: 5", out)
        self.assertIn("route: hierarchical", err)

    def test_json_is_byte_stable(self):
        first = invoke("solve", fixture_path("fig3.sfsi.json"), "--format", "json")[1]
        second = invoke("solve", fixture_path("fig3.sfsi.json"), "--format", "json")[1]
        self.assertEqual(first, second)

    def test_crossing_paths_fall_back(self):
        sys = StructuredSystem.build(
            5, [(1, 2), (2, 3), (4, 3), (1, 5), (4, 5)], inputs=[1, 4], outputs=[3, 5], self_loops=True
        )
        path = self.write("crossing.sfsi.json", sys, CostMatrix({(1, 2): 1, (2, 1): 1}))
        code, out, err = invoke("solve", path)
        self.assertEqual(code, EXIT_OK)
        self.assertIn("route: backedge->potential", err)
        self.assertIn("cost: 2", out)
        code, out, _ = invoke("solve", path, "--algo", "backedge", "--format", "json")
        self.assertEqual(code, EXIT_INFEASIBLE)
        self.assertEqual(json.loads(out)["verdict"], "infeasible")

    def test_compare_oracle_and_output_file(self):
        target = os.path.join(self.tmp.name, "report.json")
        code, _, _ = invoke(
            "solve", fixture_path("tiny.sfsi.json"), "--algo", "potential", "--compare-oracle",
            "--format", "json", "-o", target,
        )
        self.assertEqual(code, EXIT_OK)
        with open(target) as f:
            stats = json.load(f)["stats"]
        self.assertEqual(stats["oracle_cost"], 3.0)
        self.assertEqual(stats["ratio"], 1.0)

    def test_trace_goes_to_stderr(self):
        code, _, err = invoke("solve", fixture_path("fig7.sfsi.json"), "--algo", "hierarchical", "--trace")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("[dp_cell] c(Z(N^1_1)) = 5 via u1:y4", err)

    def test_not_hierarchical(self):
        sys = StructuredSystem.build(4, [(1, 2), (1, 3), (2, 4), (3, 4)], inputs=[1], outputs=[4], self_loops=True)
        path = self.write("diamond.sfsi.json", sys, CostMatrix({(1, 1): 1}))
        code, _, err = invoke("solve", path, "--algo", "hierarchical")
        self.assertEqual(code, EXIT_ASSUMPTION)
        self.assertIn("hierarchical network", err)

    def test_oracle_budget(self):
        code, _, err = invoke("solve", fixture_path("fig3.sfsi.json"), "--algo", "oracle", "--budget", "3")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("max_feasible_edges=3", err)


class TestOtherCommands(CliTestCase):
    """check-sfm, gen, reduce and bench"""

    def test_check_sfm(self):
        fig7 = fixture_path("fig7.sfsi.json")
        self.assertEqual(invoke("check-sfm", fig7, "--fs", "u1:y4,u5:y5,u2:y6")[0], EXIT_OK)
        code, out, _ = invoke("check-sfm", fig7, "--fs", "u1:y4,u2:y6")
        self.assertEqual(code, EXIT_INFEASIBLE)
        self.assertIn("states outside a feedback SCC: x5", out)
        code, out, _ = invoke("check-sfm", fig7, "--fs", "u1:y4,u2:y6", "--format", "json")
        self.assertEqual(json.loads(out)["certificate"]["condition_a"]["failing_states"], [5])

    def test_check_sfm_rejects_links_without_cost(self):
        """A link absent from the cost matrix is refused before certification."""
        fig7 = fixture_path("fig7.sfsi.json")
        code, out, err = invoke("check-sfm", fig7, "--fs", "u1:y4,u5:y5,u2:y6,u6:y1")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("u6:y1", err)
        self.assertNotIn("no-SFM: pass", out)

    def test_check_sfm_rejects_out_of_range_links(self):
        code, _, err = invoke("check-sfm", fixture_path("fig7.sfsi.json"), "--fs", "u1:y4,u9:y9")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("IndexOutOfRange", err)

    def test_gen_is_reproducible(self):
        first = invoke("gen", "--kind", "selfdamped", "--seed", "3", "-n", "4")
        second = invoke("gen", "--kind", "selfdamped", "--seed", "3", "-n", "4")
        self.assertEqual(first[0], EXIT_OK)
        self.assertEqual(first[1], second[1])
        target = os.path.join(self.tmp.name, "gen.sfsi.json")
        self.assertEqual(invoke("gen", "--kind", "selfdamped", "--seed", "3", "-n", "4", "-o", target)[0], EXIT_OK)
        with open(target) as f:
            self.assertEqual(f.read(), first[1])
        self.assertEqual(load_instance(target)[0].n, 4)

    def test_reduce_json(self):
        code, out, _ = invoke("reduce", fixture_path("fig3.sfsi.json"), "--format", "json")
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(out)
        self.assertEqual(len(payload["sccs"]), 8)
        self.assertEqual(len(payload["cycles"]), 9)
        self.assertTrue(payload["merged"])

    def test_reduce_text(self):
        code, out, _ = invoke("reduce", fixture_path("tiny.sfsi.json"), "--no-merge")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("SCCs: 3", out)
        self.assertIn("cycles: 5", out)

    @unittest.skipUnless(GraphVisualizer.available(), "graphviz not installed")
    def test_reduce_dot(self):
        code, out, _ = invoke("reduce", fixture_path("tiny.sfsi.json"), "--format", "dot")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("digraph D_R {"))

    def test_bench(self):
        suite = os.path.join(self.tmp.name, "suite.yaml")
        with open(suite, "w") as f:
            f.write(TINY_SUITE)
        out_dir = os.path.join(self.tmp.name, "bench")
        code, out, _ = invoke("bench", "--suite", suite, "--out", out_dir, "--no-progress")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("4 rows written", out)
        frame = pd.read_csv(os.path.join(out_dir, "bench.csv"))
        self.assertEqual(list(frame["algo"]), ["hierarchical", "auto", "hierarchical", "auto"])
        self.assertTrue((frame["status"] == "ok").all())
        self.assertTrue(os.path.exists(os.path.join(out_dir, "bench.json")))

    def test_usage_errors(self):
        self.assertEqual(invoke()[0], EXIT_USAGE)
        self.assertEqual(invoke("solve")[0], EXIT_USAGE)
        self.assertEqual(invoke("solve", fixture_path("tiny.sfsi.json"), "--algo", "nope")[0], EXIT_USAGE)
        self.assertEqual(invoke("solve", os.path.join(self.tmp.name, "missing.sfsi.json"))[0], EXIT_USAGE)
        self.assertEqual(invoke("check-sfm", fixture_path("tiny.sfsi.json"), "--fs", "x1")[0], EXIT_USAGE)
        self.assertEqual(invoke("gen", "--kind", "dag", "-n", "0")[0], EXIT_USAGE)

    def test_parse_error(self):
        path = os.path.join(self.tmp.name, "broken.sfsi.json")
        with open(path, "w") as f:
            f.write("{\n  \"n\": 2,\n")
        code, _, err = invoke("solve", path)
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("line 3", err)


if __name__ == '__main__':
    unittest.main()
