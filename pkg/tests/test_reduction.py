import random
import unittest

from core.errors import AssumptionViolated, CycleCapExceeded
from core.system import CostMatrix, StructuredSystem
from graphs.digraphs import input_node, output_node, scc_node
from instances.generators import random_instance
from instances.serialization import load_instance
from reduction.condensed import (
    Cycle,
    condense,
    covered_nodes,
    cycle_table,
    cycles_of,
    merge_cycles,
    reduce_instance,
    uncovered_by_any,
)
from utils.path_utils import fixture_path

FIG3_CYCLES = {
    ((1, 2, 3), ((1, 2), (2, 3))),
    ((1, 2, 4), ((1, 2), (2, 4))),
    ((1, 2, 5), ((1, 2), (5, 1))),
    ((5, 6, 8), ((6, 5), (8, 6))),
    ((5, 6, 7), ((5, 7), (6, 5))),
    ((3,), ((3, 3),)),
    ((6,), ((6, 6),)),
    ((7,), ((7, 7),)),
    ((8,), ((8, 8),)),
}


def two_tree_system():
    """Two five-wide trees funnelling into x20; every state has its own i/o pair."""
    left = [(1, k) for k in range(2, 7)]
    left += [(2, 7), (3, 7), (3, 8), (4, 8), (4, 9), (5, 8), (5, 9), (6, 9)]
    left += [(k, 20) for k in (7, 8, 9)]
    right = [(a + 9 if a != 20 else 20, b + 9 if b != 20 else 20) for a, b in left]
    sys = StructuredSystem.build(20, left + right, inputs=range(1, 21), outputs=range(1, 21), self_loops=True)
    costs = {(k, k): 1 for k in range(1, 21)}
    costs.update({(1, 20): 1, (10, 20): 1})
    return sys, CostMatrix(costs)


class TestCondense(unittest.TestCase):
    """Condensation and E_min."""

    def setUp(self):
        self.sys, self.P = load_instance(fixture_path("fig3.sfsi.json"))

    def test_singleton_sccs(self):
        cg = condense(self.sys, self.P)
        self.assertEqual(cg.scc.count, 8)
        self.assertEqual(cg.nodes(), tuple(range(1, 9)))
        self.assertEqual(len(cg.e_min), len(self.P))
        self.assertEqual(cg.pair_of((5, 1)), (5, 1))

    def test_e_min_keeps_cheapest_link_per_pair(self):
        """Ties break on the smallest link."""
        sys = StructuredSystem.build(3, [(1, 2), (2, 1)], inputs=[1, 2, 3], outputs=[1, 2, 3], self_loops=True)
        P = CostMatrix({(1, 1): 4, (1, 2): 2, (2, 1): 2, (3, 3): 1})
        cg = condense(sys, P)
        self.assertEqual(cg.scc.count, 2)
        self.assertEqual(cg.e_min[(1, 1)].link, (1, 2))
        self.assertEqual(cg.e_min[(1, 1)].cost, 2)
        self.assertEqual(cg.edges(), [(1, 2), (3, 3)])

    def test_requires_perfect_matching(self):
        sys = StructuredSystem.build(2, [(1, 2)], inputs=[1], outputs=[2])
        with self.assertRaises(AssumptionViolated):
            condense(sys, CostMatrix({(1, 1): 1}))
        self.assertEqual(condense(sys, CostMatrix({(1, 1): 1}), require_matching=False).scc.count, 2)

    def test_reduced_digraph(self):
        """D_R carries E_min as costed feedback edges."""
        d = condense(self.sys, self.P).reduced_digraph()
        self.assertTrue(d.edges[output_node(2), input_node(1)]["feedback"])
        self.assertEqual(d.edges[output_node(2), input_node(1)]["cost"], 1.0)
        self.assertTrue(d.has_edge(scc_node(1), scc_node(3)))
        self.assertEqual(d.nodes[scc_node(4)]["members"], [4])


class TestCycles(unittest.TestCase):
    """D_R cycle listing."""

    def test_worked_example_has_nine_cycles(self):
        sys, P = load_instance(fixture_path("fig3.sfsi.json"))
        cycles = cycles_of(condense(sys, P))
        self.assertEqual(len(cycles), 9)
        self.assertEqual({c.sort_key for c in cycles}, FIG3_CYCLES)
        self.assertEqual(cycles, sorted(cycles))
        self.assertEqual(merge_cycles(cycles), cycles)

    def test_labels_and_table(self):
        cycle = Cycle(nodes=frozenset({1, 2, 3}), edges=frozenset({(2, 3), (1, 2)}))
        self.assertEqual(cycle.label(), "({N1,N2,N3} : [(y2,u1),(y3,u2)])")
        row = cycle_table([cycle], {(1, 2): 1, (2, 3): 2.5})[0]
        self.assertEqual(row["index"], 1)
        self.assertEqual(row["cost"], 3.5)
        self.assertEqual(row["edges"], [[1, 2], [2, 3]])

    def test_cycle_rejects_empty_parts(self):
        with self.assertRaises(ValueError):
            Cycle(nodes=frozenset(), edges=frozenset({(1, 1)}))
        with self.assertRaises(ValueError):
            Cycle(nodes=frozenset({1}), edges=frozenset())

    def test_cap(self):
        sys, P = load_instance(fixture_path("fig3.sfsi.json"))
        with self.assertRaises(CycleCapExceeded):
            cycles_of(condense(sys, P), cap=5)

    def test_coverage_helpers(self):
        sys, P = load_instance(fixture_path("fig3.sfsi.json"))
        cycles = cycles_of(condense(sys, P))
        self.assertEqual(covered_nodes(cycles, [(1, 2), (2, 4), (3, 3)]), frozenset({1, 2, 3, 4}))
        self.assertEqual(uncovered_by_any(cycles, range(1, 10)), [9])


class TestMerge(unittest.TestCase):
    """Cycle merging along edge-set inclusion."""

    def test_strict_subset_absorbs_nodes(self):
        small = Cycle(nodes=frozenset({1}), edges=frozenset({(1, 1)}))
        big = Cycle(nodes=frozenset({2, 3}), edges=frozenset({(1, 1), (2, 3)}))
        merged = merge_cycles([small, big])
        self.assertIn(Cycle(nodes=frozenset({1, 2, 3}), edges=big.edges), merged)
        self.assertIn(small, merged)

    def test_equal_edge_sets_pool_only_on_request(self):
        """Sixteen parallel paths through the two trees collapse to two cycles."""
        sys, P = two_tree_system()
        cycles = cycles_of(condense(sys, P))
        self.assertEqual(len(cycles), 36)
        self.assertEqual(len(merge_cycles(cycles)), 36)
        pooled = merge_cycles(cycles, merge_equal=True)
        self.assertEqual(len(pooled), 22)
        left = [c for c in pooled if c.edges == frozenset({(1, 20)})]
        self.assertEqual(len(left), 1)
        self.assertEqual(left[0].nodes, frozenset(range(1, 10)) | {20})

    def test_idempotent(self):
        """Merging twice changes nothing."""
        rng = random.Random(11)
        for seed in range(60):
            sys, P = random_instance("selfdamped", {"n": rng.randint(3, 6), "edge_prob": 0.35}, seed)
            cycles = cycles_of(condense(sys, P))
            for merge_equal in (False, True):
                once = merge_cycles(cycles, merge_equal=merge_equal)
                self.assertEqual(merge_cycles(once, merge_equal=merge_equal), once)
                self.assertEqual(
                    {c.edges for c in once}, {c.edges for c in cycles}, "edge sets never change"
                )

    def test_reduce_instance(self):
        sys, P = two_tree_system()
        cg, cycles = reduce_instance(sys, P, merge_equal=True)
        self.assertEqual(cg.scc.count, 20)
        self.assertEqual(len(cycles), 22)
        _, raw = reduce_instance(sys, P, merge=False)
        self.assertEqual(len(raw), 36)


if __name__ == '__main__':
    unittest.main()
