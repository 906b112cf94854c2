"""Layered SCC arborescences and the feedback links covering each node."""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from backedge.set_cover import BACKEDGE_ASSUMPTION, check_backedge
from core.errors import AssumptionViolated, NotHierarchical
from core.system import Link, StructuredSystem, format_link
from core.validation import require_valid
from graphs.bipartite import max_matching, state_bipartite
from graphs.digraphs import state_digraph
from graphs.scc import SccDecomposition, scc_condense

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Hierarchy:
    """SCC condensation whose every non-root node has exactly one parent.

    Layers start at 1 for the roots. ``covering[k]`` is A_k: the feasible
    links whose input enters an ancestor-or-self of k and whose output
    leaves a descendant-or-self of k.
    """

    scc: SccDecomposition
    parent: Dict[int, Optional[int]]
    layer: Dict[int, int]
    position: Dict[int, int]
    input_scc: Dict[int, int]
    output_scc: Dict[int, int]
    costs: Dict[Link, float]
    covering: Dict[int, Tuple[Link, ...]]

    @property
    def roots(self) -> Tuple[int, ...]:
        return tuple(a for a in self.scc.ids() if self.parent[a] is None)

    @property
    def depth(self) -> int:
        return max(self.layer.values(), default=0)

    def layers(self) -> List[List[int]]:
        rows: List[List[int]] = [[] for _ in range(self.depth)]
        for a in self.scc.ids():
            rows[self.layer[a] - 1].append(a)
        return [sorted(row, key=lambda a: self.position[a]) for row in rows]

    def label(self, a: int) -> str:
        return f"N^{self.layer[a]}_{self.position[a]}"

    def children(self, a: int) -> List[int]:
        return self.scc.children(a)

    def ancestors(self, a: int) -> List[int]:
        """``a`` and every node above it, root last."""

        chain = [a]
        while self.parent[chain[-1]] is not None:
            chain.append(self.parent[chain[-1]])
        return chain

    def tree(self, a: int) -> FrozenSet[int]:
        members = {a}
        stack = [a]
        while stack:
            for child in self.children(stack.pop()):
                members.add(child)
                stack.append(child)
        return frozenset(members)

    def node_of_label(self, label: str) -> int:
        for a in self.scc.ids():
            if self.label(a) == label:
                return a
        raise KeyError(label)


def build_hierarchy(sys: StructuredSystem, P: Mapping[Link, float]) -> Hierarchy:
    """Layer the condensation and compute A_k for every SCC.

    Raises NotHierarchical when some SCC has two or more parents and
    AssumptionViolated when a feasible link breaks the back-edge structure
    or B(A) has no perfect matching.
    """

    require_valid(sys, P)
    scc = scc_condense(state_digraph(sys))
    parent: Dict[int, Optional[int]] = {}
    for a in scc.ids():
        parents = scc.parents(a)
        if len(parents) > 1:
            raise NotHierarchical(a, parents)
        parent[a] = parents[0] if parents else None

    check = check_backedge(sys, P)
    if not check.passed:
        raise AssumptionViolated(
            BACKEDGE_ASSUMPTION, "violated by " + ", ".join(format_link(v) for v in check.violations)
        )
    matching = max_matching(state_bipartite(sys))
    if not matching.perfect:
        raise AssumptionViolated("B(A) has a perfect matching", f"maximum matching {matching.size} < {sys.n}")

    layer: Dict[int, int] = {}
    for a in scc.topological_order():
        layer[a] = 1 if parent[a] is None else layer[parent[a]] + 1
    position: Dict[int, int] = {}
    for depth in sorted(set(layer.values())):
        row = sorted(a for a in scc.ids() if layer[a] == depth)
        position.update({a: k for k, a in enumerate(row, start=1)})

    input_scc = {i: scc.scc_of(sys.state_of_input(i)) for i in sys.inputs()}
    output_scc = {j: scc.scc_of(sys.state_of_output(j)) for j in sys.outputs()}
    costs = {link: float(P[link]) for link in sorted(P)}

    draft = Hierarchy(
        scc=scc,
        parent=parent,
        layer=layer,
        position=position,
        input_scc=input_scc,
        output_scc=output_scc,
        costs=costs,
        covering={},
    )
    covering: Dict[int, Tuple[Link, ...]] = {}
    for a in scc.ids():
        above = set(draft.ancestors(a))
        below = draft.tree(a)
        covering[a] = tuple(
            (i, j) for i, j in costs if input_scc[i] in above and output_scc[j] in below
        )
    h = replace(draft, covering=covering)
    logger.info("Hierarchy with %d SCCs over %d layers and %d roots", scc.count, h.depth, len(h.roots))
    return h


def path_of(h: Hierarchy, link: Link) -> List[int]:
    """SCCs on the unique condensation path from the link's input down to its output.

    Empty when the output does not lie below the input.
    """

    top, bottom = h.input_scc[link[0]], h.output_scc[link[1]]
    chain = h.ancestors(bottom)
    if top not in chain:
        return []
    return list(reversed(chain[: chain.index(top) + 1]))


def forest_of(h: Hierarchy, node: int, link: Link) -> List[int]:
    """Roots of the subtrees of Tree(node) that ``link`` leaves uncovered."""

    on_path = set(path_of(h, link))
    inside = h.tree(node)
    roots = [
        child
        for a in sorted(on_path & inside)
        for child in h.children(a)
        if child not in on_path
    ]
    return sorted(roots, key=lambda a: (h.layer[a], h.position[a]))
