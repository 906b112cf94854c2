"""Open- and closed-loop digraphs of a structured system."""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Tuple

import networkx as nx

from core.system import Link, StructuredSystem


class NodeKind(str, Enum):
    """Label classes of digraph nodes; the value is the node-id prefix."""

    STATE = "x"
    INPUT = "u"
    OUTPUT = "y"
    SCC = "N"


Node = Tuple[str, int]


def state_node(i: int) -> Node:
    return (NodeKind.STATE.value, i)


def input_node(i: int) -> Node:
    return (NodeKind.INPUT.value, i)


def output_node(j: int) -> Node:
    return (NodeKind.OUTPUT.value, j)


def scc_node(a: int) -> Node:
    return (NodeKind.SCC.value, a)


def node_name(node: Node) -> str:
    return f"{node[0]}{node[1]}"


def state_digraph(sys: StructuredSystem) -> nx.DiGraph:
    """D(A): one node per state, edge x_j -> x_i for every starred A_ij."""

    d = nx.DiGraph()
    for i in sys.states():
        d.add_node(state_node(i), kind=NodeKind.STATE)
    for j, i in sys.sorted_edges():
        d.add_edge(state_node(j), state_node(i), feedback=False)
    return d


def open_loop_digraph(sys: StructuredSystem) -> nx.DiGraph:
    """D(A, B, C): the state digraph plus input and output edges."""

    d = state_digraph(sys)
    for i in sys.inputs():
        d.add_node(input_node(i), kind=NodeKind.INPUT)
        d.add_edge(input_node(i), state_node(sys.state_of_input(i)), feedback=False)
    for j in sys.outputs():
        d.add_node(output_node(j), kind=NodeKind.OUTPUT)
        d.add_edge(state_node(sys.state_of_output(j)), output_node(j), feedback=False)
    return d


def closed_loop_digraph(sys: StructuredSystem, fs: Iterable[Link] = ()) -> nx.DiGraph:
    """D(A, B, C, K): open loop plus a feedback edge y_j -> u_i per link (i, j)."""

    d = open_loop_digraph(sys)
    for i, j in sorted(fs):
        d.add_edge(output_node(j), input_node(i), feedback=True)
    return d
