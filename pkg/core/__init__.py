from .errors import (
    AssumptionViolated,
    BudgetExceeded,
    CycleCapExceeded,
    Infeasible,
    InfeasibleLink,
    InvalidInstance,
    InvalidParams,
    NotHierarchical,
    ParseError,
    SfselError,
    Uncoverable,
)
from .report import SolveReport, SolveStats
from .system import (
    COST_TOLERANCE,
    CostMatrix,
    FeedbackSet,
    Link,
    StructuredSystem,
    cost_of,
    costs_equal,
    edge_label,
    format_link,
)
from .validation import Violation, ViolationKind, require_feasible_feedback, require_valid, validate

__all__ = [
    "AssumptionViolated",
    "BudgetExceeded",
    "COST_TOLERANCE",
    "CostMatrix",
    "CycleCapExceeded",
    "FeedbackSet",
    "Infeasible",
    "InfeasibleLink",
    "InvalidInstance",
    "InvalidParams",
    "Link",
    "NotHierarchical",
    "ParseError",
    "SfselError",
    "SolveReport",
    "SolveStats",
    "StructuredSystem",
    "Uncoverable",
    "Violation",
    "ViolationKind",
    "cost_of",
    "costs_equal",
    "edge_label",
    "format_link",
    "require_feasible_feedback",
    "require_valid",
    "validate",
]
