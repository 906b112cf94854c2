"""Bounded simple-cycle enumeration (Johnson's algorithm via networkx)."""

from __future__ import annotations

import itertools
import logging
from typing import Hashable, List, Sequence, Tuple

import networkx as nx

from core.errors import CycleCapExceeded

logger = logging.getLogger(__name__)

DEFAULT_CYCLE_CAP = 1_000_000


def canonical_rotation(cycle: Sequence[Hashable]) -> Tuple[Hashable, ...]:
    """Rotate so the cycle starts at its smallest node."""

    start = min(range(len(cycle)), key=lambda k: cycle[k])
    return tuple(cycle[start:]) + tuple(cycle[:start])


def enumerate_cycles(d: nx.DiGraph, cap: int = DEFAULT_CYCLE_CAP) -> List[Tuple[Hashable, ...]]:
    """All simple cycles of ``d``, each once, in canonical rotation and sorted order.

    Raises CycleCapExceeded when more than ``cap`` cycles exist.
    """

    if cap <= 0:
        raise ValueError(f"Cycle cap must be positive, got {cap}")
    found = list(itertools.islice(nx.simple_cycles(d), cap + 1))
    if len(found) > cap:
        raise CycleCapExceeded(cap, len(found))
    cycles = sorted({canonical_rotation(c) for c in found}, key=lambda c: (len(c), c))
    logger.debug("Enumerated %d simple cycles over %d nodes", len(cycles), d.number_of_nodes())
    return cycles
