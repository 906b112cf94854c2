"""Reduction of feedback selection to a cycle-cover problem on D_R.

The state digraph is condensed into SCCs. For every ordered SCC pair
(a, b) the cheapest feasible feedback edge whose input enters N_a and
whose output leaves N_b is kept (E_min); the simple cycles of the
resulting digraph D_R define the cover instance.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from core.errors import AssumptionViolated
from core.system import Link, StructuredSystem, edge_label
from core.validation import require_valid
from graphs.bipartite import max_matching, state_bipartite
from graphs.cycles import DEFAULT_CYCLE_CAP, enumerate_cycles
from graphs.digraphs import NodeKind, input_node, output_node, scc_node, state_digraph
from graphs.scc import SccDecomposition, scc_condense

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinEdge:
    link: Link
    cost: float


@dataclass(frozen=True)
class CondensedGraph:
    """SCC condensation plus E'_U, E'_Y and E_min.

    ``e_min`` is keyed by (a, b): the input enters N_a, the output leaves N_b.
    """

    scc: SccDecomposition
    input_scc: Dict[int, int]
    output_scc: Dict[int, int]
    e_min: Dict[Tuple[int, int], MinEdge]

    def nodes(self) -> Tuple[int, ...]:
        return tuple(self.scc.ids())

    def edges(self) -> List[Link]:
        return sorted(e.link for e in self.e_min.values())

    def cost_map(self) -> Dict[Link, float]:
        return {e.link: e.cost for e in sorted(self.e_min.values(), key=lambda e: e.link)}

    def pair_of(self, link: Link) -> Tuple[int, int]:
        return (self.input_scc[link[0]], self.output_scc[link[1]])

    def reduced_digraph(self) -> nx.DiGraph:
        """D_R over SCC, input and output nodes; E_min edges carry their cost."""

        d = nx.DiGraph()
        for a in self.scc.ids():
            d.add_node(scc_node(a), kind=NodeKind.SCC, members=sorted(self.scc.members(a)))
        for a, b in sorted(self.scc.edges):
            d.add_edge(scc_node(a), scc_node(b), feedback=False)
        for i, a in sorted(self.input_scc.items()):
            d.add_node(input_node(i), kind=NodeKind.INPUT)
            d.add_edge(input_node(i), scc_node(a), feedback=False)
        for j, b in sorted(self.output_scc.items()):
            d.add_node(output_node(j), kind=NodeKind.OUTPUT)
            d.add_edge(scc_node(b), output_node(j), feedback=False)
        for edge in sorted(self.e_min.values(), key=lambda e: e.link):
            i, j = edge.link
            d.add_edge(output_node(j), input_node(i), feedback=True, cost=edge.cost)
        return d


@dataclass(frozen=True, order=True)
class Cycle:
    """A D_R cycle as (N_i : E_i): the SCC ids it visits and its feedback links."""

    nodes: FrozenSet[int] = field(compare=False)
    edges: FrozenSet[Link] = field(compare=False)
    sort_key: Tuple[Tuple[int, ...], Tuple[Link, ...]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.nodes:
            raise ValueError("A cycle must visit at least one SCC")
        if not self.edges:
            raise ValueError("A D_R cycle always crosses at least one feedback edge")
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "edges", frozenset(self.edges))
        object.__setattr__(self, "sort_key", (tuple(sorted(self.nodes)), tuple(sorted(self.edges))))

    def cost(self, costs: Mapping[Link, float]) -> float:
        return sum(costs[e] for e in sorted(self.edges))

    def label(self) -> str:
        nodes = ",".join(f"N{a}" for a in sorted(self.nodes))
        edges = ",".join(edge_label(e) for e in sorted(self.edges))
        return f"({{{nodes}}} : [{edges}])"


def condense(
    sys: StructuredSystem,
    P: Mapping[Link, float],
    require_matching: bool = True,
) -> CondensedGraph:
    """Build the condensation and E_min; ties break on the smallest (input, output)."""

    require_valid(sys, P)
    if require_matching:
        matching = max_matching(state_bipartite(sys))
        if not matching.perfect:
            raise AssumptionViolated(
                "B(A) has a perfect matching",
                f"maximum matching {matching.size} < {sys.n}",
            )
    scc = scc_condense(state_digraph(sys))
    input_scc = {i: scc.scc_of(sys.state_of_input(i)) for i in sys.inputs()}
    output_scc = {j: scc.scc_of(sys.state_of_output(j)) for j in sys.outputs()}

    best: Dict[Tuple[int, int], Tuple[float, Link]] = {}
    for link in sorted(P):
        i, j = link
        key = (input_scc[i], output_scc[j])
        candidate = (P[link], link)
        if key not in best or candidate < best[key]:
            best[key] = candidate
    e_min = {key: MinEdge(link=link, cost=cost) for key, (cost, link) in sorted(best.items())}
    logger.info(
        "Condensed %d states into %d SCCs; E_min holds %d of %d feasible links",
        sys.n,
        scc.count,
        len(e_min),
        len(P),
    )
    return CondensedGraph(scc=scc, input_scc=input_scc, output_scc=output_scc, e_min=e_min)


def cycles_of(cg: CondensedGraph, cap: int = DEFAULT_CYCLE_CAP) -> List[Cycle]:
    """Every simple cycle of D_R as (N_i : E_i), deduplicated and sorted."""

    found = set()
    for raw in enumerate_cycles(cg.reduced_digraph(), cap):
        nodes = frozenset(idx for kind, idx in raw if kind == NodeKind.SCC.value)
        edges = frozenset(
            (raw[(k + 1) % len(raw)][1], idx)
            for k, (kind, idx) in enumerate(raw)
            if kind == NodeKind.OUTPUT.value
        )
        found.add(Cycle(nodes=nodes, edges=edges))
    cycles = sorted(found)
    logger.info("D_R has %d cycles", len(cycles))
    return cycles


def merge_cycles(cs: Sequence[Cycle], merge_equal: bool = False) -> List[Cycle]:
    """Pool node sets along edge-set inclusion.

    For every pair with E_a a strict subset of E_b, N_b absorbs N_a. With
    ``merge_equal`` identical edge sets pool as well. Identical (N, E) pairs
    are kept once. Edge sets never change, so a single pass over the
    original node sets reaches the fixed point.
    """

    merged: List[Cycle] = []
    for target in cs:
        nodes = set(target.nodes)
        for source in cs:
            if source.edges < target.edges or (merge_equal and source.edges == target.edges):
                nodes |= source.nodes
        merged.append(Cycle(nodes=frozenset(nodes), edges=target.edges))
    return sorted(set(merged))


def covered_nodes(cycles: Iterable[Cycle], selected: Iterable[Link]) -> FrozenSet[int]:
    """SCC ids lying on some cycle whose edges are all selected."""

    chosen = frozenset(selected)
    covered = set()
    for cycle in cycles:
        if cycle.edges <= chosen:
            covered |= cycle.nodes
    return frozenset(covered)


def uncovered_by_any(cycles: Iterable[Cycle], nodes: Iterable[int]) -> List[int]:
    reachable = set()
    for cycle in cycles:
        reachable |= cycle.nodes
    return sorted(set(nodes) - reachable)


def reduce_instance(
    sys: StructuredSystem,
    P: Mapping[Link, float],
    cap: int = DEFAULT_CYCLE_CAP,
    merge: bool = True,
    merge_equal: bool = False,
) -> Tuple[CondensedGraph, List[Cycle]]:
    """Condense, list the D_R cycles and (optionally) merge them."""

    cg = condense(sys, P)
    cycles = cycles_of(cg, cap)
    if merge:
        cycles = merge_cycles(cycles, merge_equal=merge_equal)
    return cg, cycles


def cycle_table(cycles: Sequence[Cycle], costs: Optional[Mapping[Link, float]] = None) -> List[dict]:
    rows = []
    for k, cycle in enumerate(cycles, start=1):
        row = {
            "index": k,
            "nodes": sorted(cycle.nodes),
            "edges": [list(e) for e in sorted(cycle.edges)],
            "label": cycle.label(),
        }
        if costs is not None:
            row["cost"] = cycle.cost(costs)
        rows.append(row)
    return rows
