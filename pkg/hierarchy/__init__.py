from .arborescence import Hierarchy, build_hierarchy, forest_of, path_of
from .dp import DpCandidate, DpCell, dp_table, hierarchical_solve

__all__ = [
    "DpCandidate",
    "DpCell",
    "Hierarchy",
    "build_hierarchy",
    "dp_table",
    "forest_of",
    "hierarchical_solve",
    "path_of",
]
