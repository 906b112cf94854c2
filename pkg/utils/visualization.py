from typing import Any, Dict, Iterable, Mapping, Optional

import networkx as nx

try:
    import graphviz  # type: ignore
except Exception:  # pragma: no cover - optional dependency
    graphviz = None  # type: ignore

from graphs.digraphs import NodeKind, node_name

NODE_SHAPES = {
    NodeKind.STATE.value: "ellipse",
    NodeKind.INPUT.value: "box",
    NodeKind.OUTPUT.value: "diamond",
    NodeKind.SCC.value: "doubleoctagon",
}
FEEDBACK_COLOR = "red"


class GraphVisualizer:
    """DOT rendering for system digraphs, closed loops and D_R"""

    @staticmethod
    def available() -> bool:
        return graphviz is not None

    @staticmethod
    def node_attributes(node: Any, data: Mapping[str, Any]) -> Dict[str, str]:
        """Shape by label class; SCC nodes list their member states"""
        attrs = {"shape": NODE_SHAPES.get(node[0], "ellipse")}
        if node[0] == NodeKind.SCC.value and data.get("members"):
            members = ",".join(f"x{s}" for s in data["members"])
            attrs["label"] = f"{node_name(node)}\\n{{{members}}}"
        return attrs

    @staticmethod
    def edge_attributes(data: Mapping[str, Any]) -> Dict[str, str]:
        attrs: Dict[str, str] = {}
        if data.get("feedback"):
            attrs["color"] = FEEDBACK_COLOR
            attrs["fontcolor"] = FEEDBACK_COLOR
        if "cost" in data:
            cost = float(data["cost"])
            attrs["label"] = f"{int(cost)}" if cost.is_integer() else f"{cost:g}"
        return attrs

    @staticmethod
    def to_dot(d: nx.DiGraph, name: str = "system", highlight: Optional[Iterable[Any]] = None) -> str:
        """Render ``d`` as DOT source

        Args:
            d: digraph whose node ids are (kind, index) tuples
            name: graph name written into the DOT header
            highlight: nodes to draw filled (for instance, uncovered SCCs)

        Returns:
            The DOT source text
        """
        if graphviz is None:
            raise RuntimeError("The graphviz package is required for DOT export")
        marked = set(highlight or ())
        dot = graphviz.Digraph(name=name)
        for node in sorted(d.nodes):
            attrs = GraphVisualizer.node_attributes(node, d.nodes[node])
            if node in marked:
                attrs["style"] = "filled"
            dot.node(node_name(node), **attrs)
        for u, v in sorted(d.edges):
            dot.edge(node_name(u), node_name(v), **GraphVisualizer.edge_attributes(d.edges[u, v]))
        return dot.source
