from .set_cover import (
    BACKEDGE_ASSUMPTION,
    BackedgeCheck,
    SetCoverInstance,
    backedge_solve,
    check_backedge,
    greedy_set_cover,
    reduce_to_set_cover,
)

__all__ = [
    "BACKEDGE_ASSUMPTION",
    "BackedgeCheck",
    "SetCoverInstance",
    "backedge_solve",
    "check_backedge",
    "greedy_set_cover",
    "reduce_to_set_cover",
]
