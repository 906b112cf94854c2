from .bench import BENCH_COLUMNS, audit_bound, bound_violations, run_bench, run_instance
from .solvers import ALGORITHMS, solve, solve_auto

__all__ = [
    "ALGORITHMS",
    "BENCH_COLUMNS",
    "audit_bound",
    "bound_violations",
    "run_bench",
    "run_instance",
    "solve",
    "solve_auto",
]
