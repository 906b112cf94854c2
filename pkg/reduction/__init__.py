from .condensed import (
    CondensedGraph,
    Cycle,
    MinEdge,
    condense,
    covered_nodes,
    cycle_table,
    cycles_of,
    merge_cycles,
    reduce_instance,
    uncovered_by_any,
)

__all__ = [
    "CondensedGraph",
    "Cycle",
    "MinEdge",
    "condense",
    "covered_nodes",
    "cycle_table",
    "cycles_of",
    "merge_cycles",
    "reduce_instance",
    "uncovered_by_any",
]
