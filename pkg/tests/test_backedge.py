import unittest

from backedge.set_cover import (
    SetCoverInstance,
    backedge_solve,
    check_backedge,
    greedy_set_cover,
    reduce_to_set_cover,
)
from core.errors import AssumptionViolated, Infeasible, Uncoverable
from core.system import CostMatrix, StructuredSystem
from instances.serialization import load_instance
from oracle.brute_force import brute_force_problem1
from oracle.set_cover import brute_force_set_cover
from utils.logging_interface import TraceLogger
from utils.path_utils import fixture_path

FIG6_SETS = [
    {1},
    {1, 2, 3, 4},
    {1, 3},
    {1, 4},
    {1, 4, 5},
    {2},
    {2, 3},
    {3},
    {2, 4},
    {4},
    {4, 5},
    {5},
]
FIG6_WEIGHTS = [1, 10, 10, 2, 10, 3, 10, 4, 10, 2, 8, 5]


def crossing_system():
    """x2 sits on the closed loop of two links but inside neither link's own path set."""
    sys = StructuredSystem.build(
        5,
        [(1, 2), (2, 3), (4, 3), (1, 5), (4, 5)],
        inputs=[1, 4],
        outputs=[3, 5],
        self_loops=True,
    )
    return sys, CostMatrix({(1, 2): 1, (2, 1): 1})


class TestBackedgeCheck(unittest.TestCase):
    """Reachability of every feasible link."""

    def test_worked_example_passes(self):
        sys, P = load_instance(fixture_path("fig6.sfsi.json"))
        check = check_backedge(sys, P)
        self.assertTrue(check.passed)
        self.assertEqual(check.to_json(), {"passed": True, "violations": []})

    def test_link_against_the_flow_is_reported(self):
        """Feeding y1 (on x1) into u3 (on x3) has no u3 -> y1 path."""
        sys, P = load_instance(fixture_path("tiny.sfsi.json"))
        P = CostMatrix({**dict(P), (3, 1): 1})
        check = check_backedge(sys, P)
        self.assertFalse(check.passed)
        self.assertEqual(check.violations, ((3, 1),))
        with self.assertRaises(AssumptionViolated):
            reduce_to_set_cover(sys, P)

    def test_projection_drops_violations(self):
        sys, P = load_instance(fixture_path("tiny.sfsi.json"))
        P = CostMatrix({**dict(P), (3, 1): 1})
        with self.assertLogs("backedge.set_cover", level="WARNING"):
            inst = reduce_to_set_cover(sys, P, project=True)
        self.assertNotIn((3, 1), inst.provenance)
        self.assertEqual(len(inst), len(P) - 1)


class TestSetCoverReduction(unittest.TestCase):
    """One set per feasible link."""

    def setUp(self):
        self.sys, self.P = load_instance(fixture_path("fig6.sfsi.json"))
        self.inst = reduce_to_set_cover(self.sys, self.P)

    def test_worked_example_sets_and_weights(self):
        self.assertEqual(self.inst.universe, frozenset(range(1, 6)))
        self.assertEqual([set(s) for s in self.inst.sets], FIG6_SETS)
        self.assertEqual(list(self.inst.weights), FIG6_WEIGHTS)
        self.assertEqual(self.inst.provenance[1], (1, 2))

    def test_json_form(self):
        rows = self.inst.to_json()["sets"]
        self.assertEqual(rows[1]["index"], 2)
        self.assertEqual(rows[1]["edge"], "(y2,u1)")
        self.assertEqual(rows[1]["states"], [1, 2, 3, 4])

    def test_chvatal_greedy(self):
        """Greedy takes S1, S4, S6, S8, S12 for weight 15 against an optimum of 14."""
        tracer = TraceLogger()
        picks = greedy_set_cover(self.inst, tracer)
        self.assertEqual(picks, [0, 3, 5, 7, 11])
        self.assertEqual(self.inst.weight_of(picks), 15)
        self.assertEqual(len(tracer.of_type("set_cover_round")), 5)
        best, weight = brute_force_set_cover(self.inst)
        self.assertEqual(best, [3, 5, 7, 11])
        self.assertEqual(weight, 14)

    def test_instance_validation(self):
        with self.assertRaises(ValueError):
            SetCoverInstance(frozenset({1}), (frozenset({2}),), (1.0,), ((1, 1),))
        with self.assertRaises(ValueError):
            SetCoverInstance(frozenset({1}), (frozenset({1}),), (1.0, 2.0), ((1, 1),))

    def test_uncoverable(self):
        inst = SetCoverInstance(frozenset({1, 2}), (frozenset({1}),), (1.0,), ((1, 1),))
        with self.assertRaises(Uncoverable):
            greedy_set_cover(inst)


class TestBackedgeSolve(unittest.TestCase):
    """Set-cover route end to end."""

    def test_worked_example(self):
        sys, P = load_instance(fixture_path("fig6.sfsi.json"))
        report = backedge_solve(sys, P)
        self.assertEqual(report.solver, "backedge")
        self.assertEqual(report.cost, 15)
        self.assertEqual(report.feedback.sorted_links(), [(1, 1), (1, 4), (2, 2), (3, 3), (5, 5)])
        self.assertTrue(report.certificate.passed)
        self.assertEqual(report.stats.extra["set_count"], 12)

    def test_crossing_paths(self):
        """A cover may not exist even though a cheap no-SFM feedback set does."""
        sys, P = crossing_system()
        self.assertTrue(check_backedge(sys, P).passed)
        inst = reduce_to_set_cover(sys, P)
        self.assertEqual([set(s) for s in inst.sets], [{1, 5}, {3, 4}])
        with self.assertRaises(Infeasible):
            backedge_solve(sys, P)
        self.assertEqual(brute_force_problem1(sys, P).cost, 2)


if __name__ == '__main__':
    unittest.main()
