from .greedy import GreedyOutcome, GreedyRound, GreedyState, edge_cost, greedy, run_greedy
from .pipeline import solve_with_potential
from .potential import PotentialOutcome, PotentialState, PotRow, potential_solve

__all__ = [
    "GreedyOutcome",
    "GreedyRound",
    "GreedyState",
    "PotRow",
    "PotentialOutcome",
    "PotentialState",
    "edge_cost",
    "greedy",
    "potential_solve",
    "run_greedy",
    "solve_with_potential",
]
