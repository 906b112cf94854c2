"""Strongly connected components and their condensation DAG."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

import networkx as nx

from .digraphs import NodeKind


@dataclass(frozen=True)
class SccDecomposition:
    """SCCs N_1..N_l of a state digraph plus the condensation edges E_N.

    SCC ids are 1-based and ordered by the smallest member state index.
    """

    components: Tuple[FrozenSet[int], ...]
    membership: Dict[int, int]
    edges: FrozenSet[Tuple[int, int]]

    @property
    def count(self) -> int:
        return len(self.components)

    def ids(self) -> range:
        return range(1, self.count + 1)

    def members(self, a: int) -> FrozenSet[int]:
        return self.components[a - 1]

    def scc_of(self, state: int) -> int:
        return self.membership[state]

    def as_digraph(self) -> nx.DiGraph:
        """The condensation as a DiGraph over integer SCC ids."""

        g = nx.DiGraph()
        g.add_nodes_from(self.ids())
        g.add_edges_from(sorted(self.edges))
        return g

    def parents(self, a: int) -> List[int]:
        return sorted(b for b, c in self.edges if c == a)

    def children(self, a: int) -> List[int]:
        return sorted(c for b, c in self.edges if b == a)

    def topological_order(self) -> List[int]:
        return list(nx.lexicographical_topological_sort(self.as_digraph()))


def scc_condense(d: nx.DiGraph) -> SccDecomposition:
    """Decompose the state nodes of ``d`` into SCCs and condense them."""

    states = [node for node, kind in d.nodes(data="kind") if kind == NodeKind.STATE]
    sub = d.subgraph(states)
    raw = [frozenset(idx for _, idx in comp) for comp in nx.strongly_connected_components(sub)]
    components = tuple(sorted(raw, key=min))
    membership = {state: a for a, comp in enumerate(components, start=1) for state in comp}
    edges = frozenset(
        (membership[j], membership[i])
        for (_, j), (_, i) in sub.edges()
        if membership[j] != membership[i]
    )
    return SccDecomposition(components=components, membership=membership, edges=edges)
