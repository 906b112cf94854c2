"""Well-formedness checks for a system and its cost matrix."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Mapping

from .errors import InfeasibleLink, InvalidInstance
from .system import Link, StructuredSystem

logger = logging.getLogger(__name__)


class ViolationKind(Enum):
    """Categories reported by :func:`validate`."""

    INDEX_OUT_OF_RANGE = "IndexOutOfRange"
    DANGLING_INPUT = "DanglingInput"
    DANGLING_OUTPUT = "DanglingOutput"
    DIMENSION_MISMATCH = "DimensionMismatch"
    SHARED_STATE_INPUT = "SharedStateInput"
    SHARED_STATE_OUTPUT = "SharedStateOutput"


WARNING_KINDS = frozenset({ViolationKind.SHARED_STATE_INPUT, ViolationKind.SHARED_STATE_OUTPUT})


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    message: str

    @property
    def is_warning(self) -> bool:
        return self.kind in WARNING_KINDS

    def __str__(self) -> str:
        return f"{self.kind.value}: {self.message}"

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "message": self.message, "warning": self.is_warning}


def validate(sys: StructuredSystem, P: Mapping) -> List[Violation]:
    """Return every violation found; an empty list means well-formed.

    Shared-state inputs (or outputs) are permitted and reported as warnings.
    """

    found: List[Violation] = []

    if sys.n == 0:
        found.append(Violation(ViolationKind.DIMENSION_MISMATCH, "system has no states"))

    for j, i in sys.sorted_edges():
        if not (1 <= j <= sys.n and 1 <= i <= sys.n):
            found.append(
                Violation(
                    ViolationKind.INDEX_OUT_OF_RANGE,
                    f"state edge x{j}->x{i} outside 1..{sys.n}",
                )
            )

    for k, state in enumerate(sys.input_state, start=1):
        if not 1 <= state <= sys.n:
            found.append(
                Violation(ViolationKind.DANGLING_INPUT, f"u{k} actuates state {state} outside 1..{sys.n}")
            )
    for k, state in enumerate(sys.output_state, start=1):
        if not 1 <= state <= sys.n:
            found.append(
                Violation(ViolationKind.DANGLING_OUTPUT, f"y{k} senses state {state} outside 1..{sys.n}")
            )

    for i, j in P:
        if not (1 <= i <= sys.m and 1 <= j <= sys.p):
            found.append(
                Violation(
                    ViolationKind.INDEX_OUT_OF_RANGE,
                    f"cost entry u{i}:y{j} outside [1..{sys.m}] x [1..{sys.p}]",
                )
            )

    if P and (sys.m == 0 or sys.p == 0):
        found.append(
            Violation(
                ViolationKind.DIMENSION_MISMATCH,
                f"cost matrix has entries but the system has m={sys.m}, p={sys.p}",
            )
        )

    for kind, attachments, prefix in (
        (ViolationKind.SHARED_STATE_INPUT, sys.input_state, "u"),
        (ViolationKind.SHARED_STATE_OUTPUT, sys.output_state, "y"),
    ):
        counts = Counter(attachments)
        for state, count in sorted(counts.items()):
            if count > 1 and 1 <= state <= sys.n:
                names = [f"{prefix}{k}" for k, s in enumerate(attachments, start=1) if s == state]
                found.append(Violation(kind, f"{', '.join(names)} share state x{state}"))

    return found


def require_valid(sys: StructuredSystem, P: Mapping) -> None:
    """Raise InvalidInstance on errors; log warnings and carry on."""

    violations = validate(sys, P)
    errors = [v for v in violations if not v.is_warning]
    for warning in (v for v in violations if v.is_warning):
        logger.warning("Instance warning: %s", warning)
    if errors:
        raise InvalidInstance(errors)


def require_feasible_feedback(sys: StructuredSystem, P: Mapping, fs: Iterable[Link]) -> None:
    """Every link must address an existing input/output pair and carry a cost entry.

    Raises InvalidInstance (IndexOutOfRange) for links outside [1..m] x [1..p]
    and InfeasibleLink for the first link, in sorted order, that P omits.
    """

    links = sorted(set(fs))
    outside = [
        Violation(ViolationKind.INDEX_OUT_OF_RANGE, f"feedback link u{i}:y{j} outside [1..{sys.m}] x [1..{sys.p}]")
        for i, j in links
        if not (1 <= i <= sys.m and 1 <= j <= sys.p)
    ]
    if outside:
        raise InvalidInstance(outside)
    for link in links:
        if link not in P:
            raise InfeasibleLink(link)
