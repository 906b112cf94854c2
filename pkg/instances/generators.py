"""Instance generators: the set-cover hardness construction and seeded random topologies."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import networkx as nx
from pydantic import ValidationError

from core.errors import InvalidParams
from core.system import CostMatrix, FeedbackSet, Link, StructuredSystem
from graphs.digraphs import state_digraph, state_node
from utils.config_validator import InstanceParams

logger = logging.getLogger(__name__)

INSTANCE_KINDS = ("dag", "selfdamped", "backedge", "hierarchy")


@dataclass(frozen=True)
class WeightedSetCoverSpec:
    """Universe {1..N}, sets S_1..S_r (stored 0-based) and their weights."""

    universe_size: int
    sets: Tuple[FrozenSet[int], ...]
    weights: Tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if self.universe_size < 1:
            raise InvalidParams(f"Universe must hold at least one element, got N={self.universe_size}")
        if len(self.sets) != len(self.weights):
            raise InvalidParams("Every set needs exactly one weight")
        if any(w < 0 for w in self.weights):
            raise InvalidParams("Set weights must be >= 0")
        covered = frozenset().union(*self.sets)
        if covered != self.universe:
            raise InvalidParams(
                f"Sets must cover exactly the universe; missing {sorted(self.universe - covered)}, "
                f"extra {sorted(covered - self.universe)}"
            )

    @property
    def universe(self) -> FrozenSet[int]:
        return frozenset(range(1, self.universe_size + 1))

    @property
    def r(self) -> int:
        return len(self.sets)

    def hub_input(self) -> int:
        return self.r + 1


def from_set_cover(spec: WeightedSetCoverSpec) -> Tuple[StructuredSystem, CostMatrix]:
    """Embed weighted set cover into feedback selection.

    States 1..N are elements, N+1..N+r the set nodes and N+r+1 a hub that
    feeds every element. Input u_k actuates set node k, u_{r+1} the hub;
    output y_k senses set node k. Feeding y_k back to u_{r+1} costs w_k and
    closing a set node on itself is free.
    """

    N, r = spec.universe_size, spec.r
    hub = N + r + 1
    edges: Set[Tuple[int, int]] = {(hub, e) for e in range(1, N + 1)}
    for k, members in enumerate(spec.sets, start=1):
        edges.update((e, N + k) for e in members)
    sys = StructuredSystem.build(
        hub,
        edges,
        inputs=[N + k for k in range(1, r + 1)] + [hub],
        outputs=[N + k for k in range(1, r + 1)],
        self_loops=True,
    )
    costs: Dict[Link, float] = {(r + 1, k): w for k, w in enumerate(spec.weights, start=1)}
    costs.update({(k, k): 0.0 for k in range(1, r + 1)})
    return sys, CostMatrix(costs)


def extract_cover(fs: Union[FeedbackSet, Iterable[Link]], spec: WeightedSetCoverSpec) -> Tuple[List[int], float]:
    """Sets (0-based) whose output is fed to the hub input, and their total weight."""

    hub = spec.hub_input()
    picks = sorted(j - 1 for i, j in fs if i == hub and 1 <= j <= spec.r)
    return picks, sum(spec.weights[k] for k in picks)


# ---- Random instances ----


def _coerce(params: Optional[Union[InstanceParams, Mapping]]) -> InstanceParams:
    if params is None:
        return InstanceParams()
    if isinstance(params, InstanceParams):
        return params
    try:
        return InstanceParams(**dict(params))
    except ValidationError as exc:
        raise InvalidParams(str(exc)) from None


def _draw_cost(rng: random.Random, params: InstanceParams) -> float:
    if params.fractional:
        return round(rng.uniform(params.cost_min, params.cost_max), 3)
    return float(rng.randint(params.cost_min, params.cost_max))


def _io(rng: random.Random, n: int, params: InstanceParams, forced: Sequence[int] = ()) -> Tuple[List[int], List[int]]:
    inputs = sorted(set(forced) | {x for x in range(1, n + 1) if rng.random() < params.io_prob})
    outputs = sorted(set(forced) | {x for x in range(1, n + 1) if rng.random() < params.io_prob})
    return inputs, outputs


def _groups(rng: random.Random, n: int, size: int) -> List[List[int]]:
    """Split states 1..n into consecutive groups of 1..size states."""

    groups, nxt = [], 1
    while nxt <= n:
        width = min(rng.randint(1, size), n - nxt + 1)
        groups.append(list(range(nxt, nxt + width)))
        nxt += width
    return groups


def _grouped_edges(groups: List[List[int]]) -> Set[Tuple[int, int]]:
    """Self-loops everywhere plus a directed ring through each group."""

    edges = set()
    for members in groups:
        edges.update((x, x) for x in members)
        if len(members) > 1:
            edges.update(zip(members, members[1:] + members[:1]))
    return edges


def _condensation(rng: random.Random, count: int, shape: str, params: InstanceParams) -> List[Tuple[int, int]]:
    """Edges between group positions; ``forest`` gives every group at most one parent."""

    arcs = []
    for h in range(1, count):
        if shape == "forest":
            if rng.random() >= params.root_prob:
                arcs.append((rng.randrange(h), h))
        else:
            arcs.extend((g, h) for g in range(h) if rng.random() < params.edge_prob)
    return arcs


def _reachable_links(sys: StructuredSystem) -> List[Link]:
    d = state_digraph(sys)
    links = []
    for i in sys.inputs():
        source = sys.state_of_input(i)
        below = {source} | {idx for _, idx in nx.descendants(d, state_node(source))}
        links.extend((i, j) for j in sys.outputs() if sys.state_of_output(j) in below)
    return links


def _draw_costs(
    rng: random.Random,
    candidates: Sequence[Link],
    params: InstanceParams,
    keep: Sequence[Link] = (),
) -> CostMatrix:
    allowed = set(candidates)
    kept = [link for link in keep if link in allowed]
    extra = [link for link in candidates if link not in kept and rng.random() < params.cost_prob]
    if params.max_feasible_edges is not None:
        room = max(params.max_feasible_edges - len(kept), 0)
        if len(extra) > room:
            extra = sorted(rng.sample(extra, room))
    return CostMatrix({link: _draw_cost(rng, params) for link in sorted(set(kept) | set(extra))})


def _random_dag(rng: random.Random, params: InstanceParams, self_damped: bool) -> Tuple[StructuredSystem, CostMatrix]:
    n = params.n
    order = list(range(1, n + 1))
    rng.shuffle(order)
    edges: Set[Tuple[int, int]] = set()
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            if (self_damped or a < b) and rng.random() < params.edge_prob:
                edges.add((order[a], order[b]))
    for x in range(1, n + 1):
        if self_damped or rng.random() < 0.5:
            edges.add((x, x))
    inputs, outputs = _io(rng, n, params)
    sys = StructuredSystem.build(n, edges, inputs, outputs)
    candidates = [(i, j) for i in sys.inputs() for j in sys.outputs()]
    return sys, _draw_costs(rng, candidates, params)


def _random_grouped(
    rng: random.Random,
    params: InstanceParams,
    shape: str,
    hierarchical: bool,
) -> Tuple[StructuredSystem, CostMatrix]:
    if hierarchical:
        groups, nxt = [], 1
        for _ in range(params.n):
            width = rng.randint(1, params.scc_size)
            groups.append(list(range(nxt, nxt + width)))
            nxt += width
    else:
        groups = _groups(rng, params.n, params.scc_size)
    n = groups[-1][-1]
    edges = _grouped_edges(groups)
    for g, h in _condensation(rng, len(groups), shape, params):
        edges.add((rng.choice(groups[g]), rng.choice(groups[h])))

    anchors = [rng.choice(members) for members in groups] if hierarchical else []
    inputs, outputs = _io(rng, n, params, forced=anchors)
    sys = StructuredSystem.build(n, edges, inputs, outputs)
    keep = [(inputs.index(x) + 1, outputs.index(x) + 1) for x in anchors]
    return sys, _draw_costs(rng, _reachable_links(sys), params, keep=keep)


def random_instance(
    kind: str,
    params: Optional[Union[InstanceParams, Mapping]] = None,
    seed: int = 0,
) -> Tuple[StructuredSystem, CostMatrix]:
    """Reproducible random instance.

    ``dag``: acyclic state topology, self-loops drawn at random.
    ``selfdamped``: arbitrary topology with every self-loop, so B(A) is perfect.
    ``backedge``: ringed SCCs over a DAG or forest condensation (``params.shape``)
    whose feasible links all have a path from input to output.
    ``hierarchy``: ``params.n`` SCCs over a forest condensation, each with
    its own feasible input/output pair.
    """

    if kind not in INSTANCE_KINDS:
        raise InvalidParams(f"Instance kind must be one of {list(INSTANCE_KINDS)}, got {kind!r}")
    params = _coerce(params)
    rng = random.Random(seed)
    if kind == "dag":
        sys, P = _random_dag(rng, params, self_damped=False)
    elif kind == "selfdamped":
        sys, P = _random_dag(rng, params, self_damped=True)
    elif kind == "backedge":
        sys, P = _random_grouped(rng, params, params.shape, hierarchical=False)
    else:
        sys, P = _random_grouped(rng, params, "forest", hierarchical=True)
    logger.debug("Generated %s instance (seed %d): n=%d m=%d p=%d |P|=%d", kind, seed, sys.n, sys.m, sys.p, len(P))
    return sys, P
