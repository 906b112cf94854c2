"""No-structurally-fixed-modes certificate for a closed-loop structured system.

The closed loop has no SFM exactly when
  (a) every state lies in an SCC of D(A, B, C, K) that contains a feedback
      edge, with both the output node and the input node inside that SCC;
  (b) B(A, B, C, K) has a perfect matching.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Tuple

import networkx as nx

from core.system import Link, StructuredSystem, format_link
from graphs.bipartite import closed_loop_bipartite, max_matching
from graphs.digraphs import Node, closed_loop_digraph, input_node, node_name, output_node, state_node

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StateWitness:
    """Where a state sits in the closed loop and which feedback edge certifies it."""

    state: int
    component: int
    feedback: Optional[Link]

    @property
    def passed(self) -> bool:
        return self.feedback is not None


@dataclass(frozen=True)
class ConditionA:
    passed: bool
    witnesses: Tuple[StateWitness, ...]

    @property
    def failing_states(self) -> Tuple[int, ...]:
        return tuple(w.state for w in self.witnesses if not w.passed)


@dataclass(frozen=True)
class ConditionB:
    passed: bool
    matching: Tuple[Tuple[Node, Node], ...]
    deficient: Tuple[Node, ...]


@dataclass(frozen=True)
class SfmCertificate:
    condition_a: ConditionA
    condition_b: ConditionB

    @property
    def passed(self) -> bool:
        return self.condition_a.passed and self.condition_b.passed

    def to_json(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "condition_a": {
                "passed": self.condition_a.passed,
                "failing_states": list(self.condition_a.failing_states),
                "witnesses": [
                    {
                        "state": w.state,
                        "component": w.component,
                        "feedback": format_link(w.feedback) if w.feedback else None,
                    }
                    for w in self.condition_a.witnesses
                ],
            },
            "condition_b": {
                "passed": self.condition_b.passed,
                "matching_size": len(self.condition_b.matching),
                "deficient": [node_name(n) for n in self.condition_b.deficient],
            },
        }


def _closed_loop_components(sys: StructuredSystem, links: List[Link]) -> Dict[Node, int]:
    d = closed_loop_digraph(sys, links)
    comps = sorted((sorted(c) for c in nx.strongly_connected_components(d)), key=lambda c: c[0])
    return {node: k for k, comp in enumerate(comps, start=1) for node in comp}


def check_condition_a(sys: StructuredSystem, fs: Iterable[Link]) -> ConditionA:
    """Per-state witness of an SCC holding a feedback edge, smallest link first."""

    links = sorted(set(fs))
    component = _closed_loop_components(sys, links)
    witness_of: Dict[int, Link] = {}
    for i, j in links:
        comp = component[output_node(j)]
        if comp == component[input_node(i)] and comp not in witness_of:
            witness_of[comp] = (i, j)
    witnesses = tuple(
        StateWitness(state=x, component=component[state_node(x)], feedback=witness_of.get(component[state_node(x)]))
        for x in sys.states()
    )
    passed = all(w.passed for w in witnesses)
    return ConditionA(passed=passed, witnesses=witnesses)


def check_condition_b(sys: StructuredSystem, fs: Iterable[Link]) -> ConditionB:
    """Perfect matching in the closed-loop bipartite graph."""

    matching = max_matching(closed_loop_bipartite(sys, fs))
    return ConditionB(
        passed=matching.perfect,
        matching=tuple(sorted(matching.pairs.items())),
        deficient=matching.unmatched_left,
    )


def has_no_sfm(sys: StructuredSystem, fs: Iterable[Link]) -> SfmCertificate:
    links = sorted(set(fs))
    certificate = SfmCertificate(check_condition_a(sys, links), check_condition_b(sys, links))
    logger.debug(
        "No-SFM check on %d links: condition (a) %s, condition (b) %s",
        len(links),
        certificate.condition_a.passed,
        certificate.condition_b.passed,
    )
    return certificate


def is_sfm_free(sys: StructuredSystem, fs: Iterable[Link]) -> bool:
    """Boolean form of :func:`has_no_sfm` that stops at the first failing condition."""

    links = sorted(set(fs))
    component = _closed_loop_components(sys, links)
    certified = {component[output_node(j)] for i, j in links if component[output_node(j)] == component[input_node(i)]}
    if any(component[state_node(x)] not in certified for x in sys.states()):
        return False
    return max_matching(closed_loop_bipartite(sys, links)).perfect
