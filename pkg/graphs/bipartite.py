"""Bipartite graphs B(A) and B(A, B, C, K) and maximum matching.

For a digraph edge a -> b the bipartite graph holds the pair (b', a):
left vertices are primed copies, right vertices the originals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Tuple

import networkx as nx
from networkx.algorithms import bipartite as nx_bipartite

from core.system import Link, StructuredSystem

from .digraphs import Node, NodeKind, input_node, output_node, state_node


def primed(node: Node) -> Node:
    return (node[0] + "'", node[1])


@dataclass(frozen=True)
class Bipartite:
    left: Tuple[Node, ...]
    right: Tuple[Node, ...]
    edges: FrozenSet[Tuple[Node, Node]]

    def __post_init__(self) -> None:
        left, right = set(self.left), set(self.right)
        for a, b in self.edges:
            if a not in left or b not in right:
                raise ValueError(f"Bipartite edge {a}-{b} does not join left to right")

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.left, bipartite=0)
        g.add_nodes_from(self.right, bipartite=1)
        g.add_edges_from(sorted(self.edges))
        return g


@dataclass(frozen=True)
class Matching:
    size: int
    pairs: Dict[Node, Node] = field(default_factory=dict)
    unmatched_left: Tuple[Node, ...] = ()
    unmatched_right: Tuple[Node, ...] = ()
    left_count: int = 0
    right_count: int = 0

    @property
    def perfect(self) -> bool:
        return self.size == min(self.left_count, self.right_count)


def _digraph_edges_to_bipartite(edges: Iterable[Tuple[Node, Node]]) -> FrozenSet[Tuple[Node, Node]]:
    return frozenset((primed(head), tail) for tail, head in edges)


def state_bipartite(sys: StructuredSystem) -> Bipartite:
    states = [state_node(i) for i in sys.states()]
    edges = ((state_node(j), state_node(i)) for j, i in sys.sorted_edges())
    return Bipartite(
        left=tuple(primed(s) for s in states),
        right=tuple(states),
        edges=_digraph_edges_to_bipartite(edges),
    )


def closed_loop_bipartite(sys: StructuredSystem, fs: Iterable[Link] = ()) -> Bipartite:
    """B(A, B, C, K) including the (u'_i, u_i) and (y'_j, y_j) self-links."""

    originals = (
        [state_node(i) for i in sys.states()]
        + [input_node(i) for i in sys.inputs()]
        + [output_node(j) for j in sys.outputs()]
    )
    digraph_edges = [(state_node(j), state_node(i)) for j, i in sys.sorted_edges()]
    digraph_edges += [(input_node(i), state_node(sys.state_of_input(i))) for i in sys.inputs()]
    digraph_edges += [(state_node(sys.state_of_output(j)), output_node(j)) for j in sys.outputs()]
    digraph_edges += [(output_node(j), input_node(i)) for i, j in sorted(fs)]
    edges = set(_digraph_edges_to_bipartite(digraph_edges))
    edges.update((primed(node), node) for node in originals if node[0] != NodeKind.STATE.value)
    return Bipartite(
        left=tuple(primed(node) for node in originals),
        right=tuple(originals),
        edges=frozenset(edges),
    )


def max_matching(b: Bipartite) -> Matching:
    """Maximum-cardinality matching via Hopcroft-Karp."""

    if not b.left or not b.right:
        return Matching(
            size=0,
            unmatched_left=tuple(sorted(b.left)),
            unmatched_right=tuple(sorted(b.right)),
            left_count=len(b.left),
            right_count=len(b.right),
        )
    raw = nx_bipartite.hopcroft_karp_matching(b.to_networkx(), top_nodes=set(b.left))
    left = set(b.left)
    pairs = {u: v for u, v in sorted(raw.items()) if u in left}
    matched_right = set(pairs.values())
    return Matching(
        size=len(pairs),
        pairs=pairs,
        unmatched_left=tuple(sorted(n for n in b.left if n not in pairs)),
        unmatched_right=tuple(sorted(n for n in b.right if n not in matched_right)),
        left_count=len(b.left),
        right_count=len(b.right),
    )
