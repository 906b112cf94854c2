"""Exception hierarchy shared by every solver and the command line."""

from __future__ import annotations

from typing import Any, Iterable, Optional, Sequence, Tuple


class SfselError(Exception):
    """Base class for all feedback-selection errors."""


class InvalidInstance(SfselError):
    """Raised when a system/cost pair fails validation."""

    def __init__(self, violations: Sequence[Any]):
        self.violations = tuple(violations)
        summary = "; ".join(str(v) for v in self.violations[:5])
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        super().__init__(f"Invalid instance: {summary}{more}")


class InfeasibleLink(SfselError):
    """A feedback link has no finite cost."""

    def __init__(self, link: Tuple[int, int]):
        self.link = link
        super().__init__(f"Feedback link u{link[0]}:y{link[1]} is infeasible (no cost entry)")


class CycleCapExceeded(SfselError):
    """More simple cycles exist than the configured cap allows."""

    def __init__(self, cap: int, found: int):
        self.cap = cap
        self.found = found
        super().__init__(
            f"Cycle enumeration exceeded the cap of {cap} cycles "
            f"({found} enumerated before stopping); raise SFSEL_CYCLE_CAP to continue"
        )


class AssumptionViolated(SfselError):
    """A structural assumption required by a solver does not hold."""

    def __init__(self, assumption: str, detail: str = ""):
        self.assumption = assumption
        self.detail = detail
        message = f"Assumption violated: {assumption}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)


class NotHierarchical(AssumptionViolated):
    """The SCC condensation is not a forest of arborescences."""

    def __init__(self, node: int, parents: Iterable[int]):
        self.node = node
        self.parents = tuple(sorted(parents))
        super().__init__(
            "hierarchical network",
            f"SCC N{node} has {len(self.parents)} parents {list(self.parents)}",
        )


class Uncoverable(SfselError):
    """Some nodes cannot be covered by any available cycle or set."""

    def __init__(self, nodes: Iterable[Any], what: str = "node"):
        self.nodes = tuple(sorted(nodes))
        super().__init__(f"Uncoverable {what}s: {list(self.nodes)}")


class Infeasible(SfselError):
    """No feedback pattern achieves arbitrary pole placement."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Infeasible instance: {reason}")


class BudgetExceeded(SfselError):
    """An exhaustive search would exceed its budget."""

    def __init__(self, limit: str, actual: Optional[Any] = None):
        self.limit = limit
        self.actual = actual
        suffix = "" if actual is None else f" (got {actual})"
        super().__init__(f"Oracle budget exceeded: {limit}{suffix}")


class InvalidParams(SfselError, ValueError):
    """Generator or set-cover parameters are not usable."""


class ParseError(SfselError):
    """An instance document could not be decoded."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{message} at line {line}, column {column}")
