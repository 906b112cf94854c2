from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


class SolverLogger(ABC):
    """Abstract base class for solver trace logging"""

    @abstractmethod
    def start(self):
        """Start a tracing session"""
        pass

    @abstractmethod
    def stop(self):
        """Stop the tracing session"""
        pass

    @abstractmethod
    def log_event(self, event_type: str, message: str, data: Optional[Dict[str, Any]] = None):
        """Log a structured event (a greedy round, a pot table, a DP cell)"""
        pass

    @abstractmethod
    def log_error(self, error_type: str, message: str, error: Optional[Exception] = None):
        """Log an error"""
        pass

    @abstractmethod
    def clear(self):
        """Clear the trace"""
        pass


class NullLogger(SolverLogger):
    """A no-op logger that implements the SolverLogger interface"""

    def start(self):
        pass

    def stop(self):
        pass

    def log_event(self, event_type: str, message: str, data: Optional[Dict[str, Any]] = None):
        pass

    def log_error(self, error_type: str, message: str, error: Optional[Exception] = None):
        pass

    def clear(self):
        pass


@dataclass
class TraceEvent:
    event_type: str
    message: str
    data: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        return {"event": self.event_type, "message": self.message, "data": self.data}


class TraceLogger(SolverLogger):
    """Keeps every event in memory so the CLI can print or serialize the trace"""

    def __init__(self):
        self.events: List[TraceEvent] = []
        self.errors: List[TraceEvent] = []
        self.active = False

    def start(self):
        self.active = True

    def stop(self):
        self.active = False

    def log_event(self, event_type: str, message: str, data: Optional[Dict[str, Any]] = None):
        self.events.append(TraceEvent(event_type, message, dict(data or {})))

    def log_error(self, error_type: str, message: str, error: Optional[Exception] = None):
        data = {"error": repr(error)} if error is not None else {}
        self.errors.append(TraceEvent(error_type, message, data))

    def clear(self):
        self.events.clear()
        self.errors.clear()

    def of_type(self, event_type: str) -> List[TraceEvent]:
        return [e for e in self.events if e.event_type == event_type]

    def to_json(self) -> List[Dict[str, Any]]:
        return [e.to_json() for e in self.events]

    def render(self) -> str:
        """Plain-text dump, one event per line"""
        lines = []
        for event in self.events:
            lines.append(f"[{event.event_type}] {event.message}")
        for error in self.errors:
            lines.append(f"[error:{error.event_type}] {error.message}")
        return "\n".join(lines)
