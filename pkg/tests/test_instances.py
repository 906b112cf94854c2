import os
import tempfile
import unittest

import networkx as nx

from backedge.set_cover import check_backedge
from core.errors import InvalidParams, ParseError
from core.system import CostMatrix, FeedbackSet, StructuredSystem
from hierarchy.arborescence import build_hierarchy
from instances.generators import WeightedSetCoverSpec, extract_cover, from_set_cover, random_instance
from instances.serialization import load_instance, read_instance, save_instance, write_instance
from oracle.brute_force import brute_force_problem1
from sfm.certificate import check_condition_a
from utils.path_utils import fixture_path

FIXTURES = ("fig3.sfsi.json", "fig6.sfsi.json", "fig7.sfsi.json", "tiny.sfsi.json")


class TestSetCoverEmbedding(unittest.TestCase):
    """Set-cover instances as feedback selection."""

    def setUp(self):
        self.spec = WeightedSetCoverSpec(2, ({1}, {1, 2}), (3, 1))

    def test_structure(self):
        sys, P = from_set_cover(self.spec)
        self.assertEqual(sys.n, 5)
        self.assertEqual(sys.input_state, (3, 4, 5))
        self.assertEqual(sys.output_state, (3, 4))
        self.assertTrue({(5, 1), (5, 2), (1, 3), (1, 4), (2, 4)} <= sys.state_edges)
        self.assertTrue(sys.is_self_damped())
        self.assertEqual(P, CostMatrix({(3, 1): 3, (3, 2): 1, (1, 1): 0, (2, 2): 0}))

    def test_extract_cover(self):
        picks, weight = extract_cover(FeedbackSet.parse("u3:y2,u1:y1"), self.spec)
        self.assertEqual(picks, [1])
        self.assertEqual(weight, 1.0)

    def test_invalid_specs(self):
        with self.assertRaises(InvalidParams):
            WeightedSetCoverSpec(0, (), ())
        with self.assertRaises(InvalidParams):
            WeightedSetCoverSpec(2, ({1, 2},), (1, 2))
        with self.assertRaises(InvalidParams):
            WeightedSetCoverSpec(2, ({1, 2},), (-1,))
        with self.assertRaises(InvalidParams):
            WeightedSetCoverSpec(3, ({1, 2},), (1,))
        with self.assertRaises(InvalidParams):
            WeightedSetCoverSpec(1, ({1, 2},), (1,))

    def test_three_set_example(self):
        """Universe {1..5} with sets {1,2}, {2,3}, {3,4,5} gives nine states, four inputs, three outputs."""
        spec = WeightedSetCoverSpec(5, ({1, 2}, {2, 3}, {3, 4, 5}), (1, 1, 1))
        sys, P = from_set_cover(spec)
        self.assertEqual((sys.n, sys.m, sys.p), (9, 4, 3))
        self.assertTrue(sys.is_self_damped())
        self.assertTrue({(9, e) for e in range(1, 6)} <= sys.state_edges)
        self.assertTrue({(1, 6), (2, 6), (2, 7), (3, 7), (3, 8), (4, 8), (5, 8)} <= sys.state_edges)
        fs = FeedbackSet.parse("u4:y1,u4:y2,u4:y3,u1:y1,u2:y2,u3:y3")
        self.assertTrue(check_condition_a(sys, fs).passed)
        self.assertFalse(check_condition_a(sys, FeedbackSet.parse("u4:y1,u1:y1,u2:y2,u3:y3")).passed)

    def test_unit_weights_give_uniform_hub_links(self):
        """With every weight 1 all links into the hub input cost the same, and the optimum counts sets."""
        spec = WeightedSetCoverSpec(5, ({1, 2}, {2, 3}, {3, 4, 5}), (1, 1, 1))
        sys, P = from_set_cover(spec)
        self.assertEqual({P[(4, k)] for k in (1, 2, 3)}, {1.0})
        report = brute_force_problem1(sys, P)
        self.assertEqual(report.cost, 2.0)
        picks, weight = extract_cover(report.feedback, spec)
        self.assertEqual((picks, weight), ([0, 2], 2.0))

    def test_single_set(self):
        """One set equal to the universe: the optimum is its weight."""
        spec = WeightedSetCoverSpec(3, ({1, 2, 3},), (4,))
        sys, P = from_set_cover(spec)
        self.assertEqual(brute_force_problem1(sys, P).cost, 4.0)


class TestSerialization(unittest.TestCase):
    """Reading and writing .sfsi.json documents."""

    def test_fixtures_are_canonical(self):
        """Writing a decoded fixture reproduces its bytes."""
        for name in FIXTURES:
            path = fixture_path(name)
            with open(path, "rb") as f:
                raw = f.read()
            self.assertEqual(write_instance(*read_instance(raw)), raw, name)

    def test_save_and_load(self):
        sys = StructuredSystem.build(2, [(1, 2)], inputs=[1], outputs=[2], self_loops=True)
        P = CostMatrix({(1, 1): 2.5})
        with tempfile.TemporaryDirectory() as tmp:
            path = save_instance(os.path.join(tmp, "nested", "one.sfsi.json"), sys, P)
            self.assertEqual(load_instance(path), (sys, P))

    def test_missing_file(self):
        with self.assertRaises(FileNotFoundError):
            load_instance("/nonexistent/instance.sfsi.json")

    def test_malformed_json_position(self):
        with self.assertRaises(ParseError) as ctx:
            read_instance('{\n  "n": 2,\n  oops\n}\n')
        self.assertEqual(ctx.exception.line, 3)
        self.assertEqual(ctx.exception.column, 3)

    def test_short_cost_triple(self):
        text = '{\n  "n": 1,\n  "costs": [[1, 1]]\n}\n'
        with self.assertRaises(ParseError) as ctx:
            read_instance(text)
        self.assertEqual((ctx.exception.line, ctx.exception.column), (3, 3))
        self.assertIn("costs", ctx.exception.message)

    def test_duplicate_cost(self):
        text = '{"n": 1, "inputs": [1], "outputs": [1],\n "costs": [[1, 1, 1], [1, 1, 2]]}'
        with self.assertRaises(ParseError) as ctx:
            read_instance(text)
        self.assertIn("Duplicate", str(ctx.exception))
        self.assertEqual(ctx.exception.line, 2)

    def test_unknown_key(self):
        text = '{\n  "n": 1,\n  "weights": []\n}'
        with self.assertRaises(ParseError) as ctx:
            read_instance(text)
        self.assertEqual(ctx.exception.line, 3)

    def test_invalid_utf8(self):
        """Undecodable bytes report where they sit."""
        data = b'{\n  "n": 1,\n  "costs": [\xff]\n}\n'
        with self.assertRaises(ParseError) as ctx:
            read_instance(data)
        self.assertEqual((ctx.exception.line, ctx.exception.column), (3, 13))
        self.assertIn("0xff", ctx.exception.message)

    def test_rejected_values(self):
        for text in (
            '{"n": 1, "costs": [[1, 1, -2]]}',
            '{"version": 2, "n": 1}',
            '[1, 2]',
            '{"n": -1}',
        ):
            with self.assertRaises(ParseError, msg=text):
                read_instance(text)


class TestRandomInstances(unittest.TestCase):
    """Seeded generators."""

    def test_dag_is_acyclic(self):
        for seed in range(20):
            sys, _ = random_instance("dag", {"n": 6, "edge_prob": 0.5}, seed)
            d = nx.DiGraph([(a, b) for a, b in sys.state_edges if a != b])
            self.assertTrue(nx.is_directed_acyclic_graph(d), seed)

    def test_selfdamped(self):
        for seed in range(10):
            sys, _ = random_instance("selfdamped", {"n": 5}, seed)
            self.assertTrue(sys.is_self_damped())

    def test_backedge_kind_satisfies_the_assumption(self):
        for shape in ("dag", "forest"):
            for seed in range(15):
                sys, P = random_instance("backedge", {"n": 6, "scc_size": 3, "shape": shape}, seed)
                self.assertTrue(check_backedge(sys, P).passed, (shape, seed))

    def test_hierarchy_kind_is_hierarchical(self):
        for seed in range(15):
            sys, P = random_instance("hierarchy", {"n": 5, "scc_size": 2}, seed)
            h = build_hierarchy(sys, P)
            self.assertEqual(h.scc.count, 5)
            self.assertTrue(all(h.covering[a] for a in h.scc.ids()))

    def test_feasible_link_cap(self):
        for seed in range(10):
            _, P = random_instance("selfdamped", {"n": 6, "io_prob": 1.0, "max_feasible_edges": 4}, seed)
            self.assertLessEqual(len(P), 4)

    def test_fractional_costs(self):
        _, P = random_instance("selfdamped", {"n": 5, "io_prob": 1.0, "cost_prob": 1.0, "fractional": True}, 1)
        self.assertTrue(any(not float(c).is_integer() for c in P.values()))

    def test_invalid_params(self):
        with self.assertRaises(InvalidParams):
            random_instance("ring", {}, 0)
        with self.assertRaises(InvalidParams):
            random_instance("dag", {"n": 0}, 0)
        with self.assertRaises(InvalidParams):
            random_instance("dag", {"cost_min": 5, "cost_max": 2}, 0)
        with self.assertRaises(InvalidParams):
            random_instance("backedge", {"shape": "ring"}, 0)


if __name__ == '__main__':
    unittest.main()
