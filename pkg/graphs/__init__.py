from .bipartite import (
    Bipartite,
    Matching,
    closed_loop_bipartite,
    max_matching,
    primed,
    state_bipartite,
)
from .cycles import DEFAULT_CYCLE_CAP, canonical_rotation, enumerate_cycles
from .digraphs import (
    Node,
    NodeKind,
    closed_loop_digraph,
    input_node,
    node_name,
    open_loop_digraph,
    output_node,
    scc_node,
    state_digraph,
    state_node,
)
from .scc import SccDecomposition, scc_condense

__all__ = [
    "Bipartite",
    "DEFAULT_CYCLE_CAP",
    "Matching",
    "Node",
    "NodeKind",
    "SccDecomposition",
    "canonical_rotation",
    "closed_loop_bipartite",
    "closed_loop_digraph",
    "enumerate_cycles",
    "input_node",
    "max_matching",
    "node_name",
    "open_loop_digraph",
    "output_node",
    "primed",
    "scc_condense",
    "scc_node",
    "state_bipartite",
    "state_digraph",
    "state_node",
]
