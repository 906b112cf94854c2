import unittest

from core.system import FeedbackSet
from graphs.digraphs import closed_loop_digraph, input_node, output_node, scc_node, state_node
from instances.serialization import load_instance
from reduction.condensed import condense
from utils.path_utils import fixture_path
from utils.visualization import FEEDBACK_COLOR, GraphVisualizer


class TestGraphVisualizer(unittest.TestCase):
    """Test suite for DOT rendering."""

    def setUp(self):
        self.sys, self.P = load_instance(fixture_path("fig7.sfsi.json"))

    def test_node_shapes(self):
        self.assertEqual(GraphVisualizer.node_attributes(state_node(1), {})["shape"], "ellipse")
        self.assertEqual(GraphVisualizer.node_attributes(input_node(1), {})["shape"], "box")
        self.assertEqual(GraphVisualizer.node_attributes(output_node(1), {})["shape"], "diamond")
        attrs = GraphVisualizer.node_attributes(scc_node(2), {"members": [2, 3]})
        self.assertEqual(attrs["shape"], "doubleoctagon")
        self.assertEqual(attrs["label"], "N2\\n{x2,x3}")

    def test_edge_attributes(self):
        """Feedback edges are red; costs print without a trailing .0."""
        self.assertEqual(GraphVisualizer.edge_attributes({"feedback": False}), {})
        attrs = GraphVisualizer.edge_attributes({"feedback": True, "cost": 2.0})
        self.assertEqual(attrs["color"], FEEDBACK_COLOR)
        self.assertEqual(attrs["label"], "2")
        self.assertEqual(GraphVisualizer.edge_attributes({"cost": 2.5})["label"], "2.5")

    @unittest.skipUnless(GraphVisualizer.available(), "graphviz not installed")
    def test_closed_loop_dot(self):
        d = closed_loop_digraph(self.sys, FeedbackSet.parse("u1:y4"))
        source = GraphVisualizer.to_dot(d, name="closed", highlight=[state_node(5)])
        self.assertTrue(source.startswith("digraph closed {"))
        self.assertIn("y4 -> u1", source)
        self.assertIn("style=filled", source)

    @unittest.skipUnless(GraphVisualizer.available(), "graphviz not installed")
    def test_reduced_digraph_dot(self):
        source = GraphVisualizer.to_dot(condense(self.sys, self.P).reduced_digraph(), name="D_R")
        self.assertIn("N1 -> N2", source)
        self.assertIn("label=2", source)


if __name__ == '__main__':
    unittest.main()
