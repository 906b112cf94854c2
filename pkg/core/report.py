"""Solve reports returned by every solver."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Dict, List, Optional

from .system import FeedbackSet, format_link

if TYPE_CHECKING:  # pragma: no cover
    from sfm.certificate import SfmCertificate


@dataclass
class SolveStats:
    """Counters collected while solving."""

    cycle_count: int = 0
    iterations: int = 0
    elapsed_s: float = 0.0
    extra: Dict[str, Any] = field(default_factory=dict)

    def to_json(self, include_timing: bool = True) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"cycle_count": self.cycle_count, "iterations": self.iterations}
        if include_timing:
            payload["elapsed_s"] = round(self.elapsed_s, 6)
        payload.update(self.extra)
        return payload


@dataclass
class SolveReport:
    """Outcome of a solver run.

    A report carrying a feedback set must also carry a passing certificate.
    """

    solver: str
    feedback: Optional[FeedbackSet]
    cost: Optional[float]
    certificate: Optional["SfmCertificate"] = None
    stats: SolveStats = field(default_factory=SolveStats)
    route: Optional[str] = None
    reason: Optional[str] = None
    trace: List[Dict[str, Any]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.feedback is not None:
            if self.certificate is None or not self.certificate.passed:
                raise ValueError(
                    f"{self.solver} returned a feedback set without a passing no-SFM certificate"
                )

    @classmethod
    def infeasible(cls, solver: str, reason: str, route: Optional[str] = None) -> "SolveReport":
        return cls(solver=solver, feedback=None, cost=None, route=route, reason=reason)

    @property
    def verdict(self) -> str:
        return "feasible" if self.feedback is not None else "infeasible"

    def to_json(self, include_timing: bool = True) -> Dict[str, Any]:
        """Serialize the report; drop wall time for byte-stable output."""

        payload: Dict[str, Any] = {
            "solver": self.solver,
            "verdict": self.verdict,
            "cost": self.cost,
            "links": [format_link(link) for link in self.feedback] if self.feedback else [],
            "stats": self.stats.to_json(include_timing),
        }
        if self.route:
            payload["route"] = self.route
        if self.reason:
            payload["reason"] = self.reason
        if self.certificate is not None:
            payload["certificate"] = self.certificate.to_json()
        if self.trace:
            payload["trace"] = self.trace
        return payload

    def to_text(self) -> str:
        lines = [f"solver: {self.solver}"]
        if self.route:
            lines.append(f"route: {self.route}")
        lines.append(f"verdict: {self.verdict}")
        if self.feedback is not None:
            lines.append(f"cost: {self.cost:g}")
            lines.append("links: " + (self.feedback.to_text() or "(none)"))
        if self.reason:
            lines.append(f"reason: {self.reason}")
        stats = self.stats.to_json()
        lines.append("stats: " + ", ".join(f"{k}={v}" for k, v in stats.items()))
        return "\n".join(lines)

    def dumps(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_json(include_timing), indent=2, sort_keys=True)
