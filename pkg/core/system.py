"""Data model for structured systems with dedicated inputs and outputs."""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from .errors import InfeasibleLink

# (input index, output index); the feedback edge y_output -> u_input.
Link = Tuple[int, int]

COST_TOLERANCE = 1e-9


def format_link(link: Link) -> str:
    """Render a link the way the command line accepts it (``u1:y4``)."""

    return f"u{link[0]}:y{link[1]}"


def edge_label(link: Link) -> str:
    """Render a link as the feedback edge it denotes (``(y4,u1)``)."""

    return f"(y{link[1]},u{link[0]})"


@dataclass(frozen=True)
class StructuredSystem:
    """Zero/star pattern of A plus dedicated input and output attachments.

    ``state_edges`` holds ordered pairs ``(j, i)`` meaning x_j -> x_i.
    ``input_state[k - 1]`` is the state actuated by input u_k and
    ``output_state[k - 1]`` the state sensed by output y_k. All indices are
    1-based. Range checks live in :func:`core.validation.validate` so that a
    malformed system can still be inspected and reported.
    """

    n: int
    state_edges: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)
    input_state: Tuple[int, ...] = ()
    output_state: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"State count must be a non-negative integer, got {self.n!r}")
        object.__setattr__(
            self, "state_edges", frozenset((int(a), int(b)) for a, b in self.state_edges)
        )
        object.__setattr__(self, "input_state", tuple(int(s) for s in self.input_state))
        object.__setattr__(self, "output_state", tuple(int(s) for s in self.output_state))

    @classmethod
    def build(
        cls,
        n: int,
        edges: Iterable[Tuple[int, int]] = (),
        inputs: Iterable[int] = (),
        outputs: Iterable[int] = (),
        self_loops: bool = False,
    ) -> "StructuredSystem":
        """Convenience constructor; ``self_loops`` stars every diagonal entry."""

        edge_set = set(edges)
        if self_loops:
            edge_set.update((i, i) for i in range(1, n + 1))
        return cls(n, frozenset(edge_set), tuple(inputs), tuple(outputs))

    @property
    def m(self) -> int:
        return len(self.input_state)

    @property
    def p(self) -> int:
        return len(self.output_state)

    def states(self) -> range:
        return range(1, self.n + 1)

    def inputs(self) -> range:
        return range(1, self.m + 1)

    def outputs(self) -> range:
        return range(1, self.p + 1)

    def state_of_input(self, i: int) -> int:
        return self.input_state[i - 1]

    def state_of_output(self, j: int) -> int:
        return self.output_state[j - 1]

    def sorted_edges(self) -> List[Tuple[int, int]]:
        return sorted(self.state_edges)

    def is_self_damped(self) -> bool:
        return all((i, i) in self.state_edges for i in self.states())


class CostMatrix(Mapping):
    """Sparse m x p feedback cost matrix.

    Absent pairs are infeasible (P_ij = infinity); infinity is never stored.
    """

    def __init__(self, entries: Optional[Mapping[Link, float]] = None):
        cleaned: Dict[Link, float] = {}
        for key, value in (entries or {}).items():
            i, j = int(key[0]), int(key[1])
            cost = float(value)
            if not math.isfinite(cost) or cost < 0:
                raise ValueError(f"Cost for u{i}:y{j} must be finite and >= 0, got {value!r}")
            if i < 1 or j < 1:
                raise ValueError(f"Cost keys are 1-based, got ({i}, {j})")
            cleaned[(i, j)] = cost
        self._entries = dict(sorted(cleaned.items()))

    @classmethod
    def from_triples(cls, triples: Iterable[Tuple[int, int, float]]) -> "CostMatrix":
        return cls({(int(i), int(j)): c for i, j, c in triples})

    def __getitem__(self, link: Link) -> float:
        return self._entries[link]

    def __iter__(self) -> Iterator[Link]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, CostMatrix):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._entries.items()))

    def __repr__(self) -> str:
        return f"CostMatrix({len(self)} feasible links)"

    def links(self) -> List[Link]:
        """Feasible links in (input, output) order."""

        return list(self._entries)

    def triples(self) -> List[Tuple[int, int, float]]:
        return [(i, j, c) for (i, j), c in self._entries.items()]

    def is_feasible(self, link: Link) -> bool:
        return link in self._entries

    def restricted(self, keep: Iterable[Link]) -> "CostMatrix":
        """Return a copy holding only the given links."""

        wanted = set(keep)
        return CostMatrix({k: v for k, v in self._entries.items() if k in wanted})

    def without(self, drop: Iterable[Link]) -> "CostMatrix":
        unwanted = set(drop)
        return CostMatrix({k: v for k, v in self._entries.items() if k not in unwanted})


@dataclass(frozen=True)
class FeedbackSet:
    """A set of feedback links (the pattern K)."""

    links: FrozenSet[Link] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "links", frozenset((int(i), int(j)) for i, j in self.links))

    @classmethod
    def of(cls, *links: Link) -> "FeedbackSet":
        return cls(frozenset(links))

    @classmethod
    def parse(cls, text: str) -> "FeedbackSet":
        """Parse ``"u1:y4,u5:y5"``; whitespace is ignored, an empty string is the empty set."""

        links = set()
        for chunk in text.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            try:
                left, right = (part.strip().lower() for part in chunk.split(":"))
                if not (left.startswith("u") and right.startswith("y")):
                    raise ValueError
                links.add((int(left[1:]), int(right[1:])))
            except ValueError:
                raise ValueError(f"Malformed feedback link {chunk!r}; expected uI:yJ") from None
        return cls(frozenset(links))

    def __iter__(self) -> Iterator[Link]:
        return iter(sorted(self.links))

    def __len__(self) -> int:
        return len(self.links)

    def __contains__(self, link: object) -> bool:
        return link in self.links

    def sorted_links(self) -> List[Link]:
        return sorted(self.links)

    def union(self, other: Iterable[Link]) -> "FeedbackSet":
        return FeedbackSet(self.links | frozenset(other))

    def to_text(self) -> str:
        return ",".join(format_link(link) for link in self.sorted_links())

    def to_json(self) -> List[List[int]]:
        return [[i, j] for i, j in self.sorted_links()]


def cost_of(fs: Iterable[Link], P: Mapping) -> float:
    """Exact cost P(K) of a feedback set; raises InfeasibleLink for absent entries."""

    links = fs.links if isinstance(fs, FeedbackSet) else frozenset(fs)
    total = []
    for link in sorted(links):
        if link not in P:
            raise InfeasibleLink(link)
        total.append(P[link])
    return math.fsum(total)


def costs_equal(a: float, b: float, tolerance: float = COST_TOLERANCE) -> bool:
    return abs(a - b) <= tolerance
