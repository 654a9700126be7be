"""
Stable heaps, smooth heaps, and the geometric view of self-adjusting BSTs.

The package ties together five executable layers and cross-checks them
against each other: permutation inputs and pre-sortedness measures, the
satisfied-superset geometry with its row-sweep and gadget-filling greedy
algorithms, the stable heap with pluggable extract-min strategies, the
star-to-path view of heap executions, and the transformations that convert
link schedules into satisfied supersets and BST insert executions.
"""

from .geometry import greedy_nondet, greedy_sweep, is_satisfied
from .heap import HeapForest, sort_mode_run
from .perms import gen_random, gen_tilted_grid, inverse, point_set_of
from .replay import greedy_future, replay_insert_mode
from .smooth import check_equivalence, restructure_nondet, restructure_twopass, treapify
from .sorting import cartesian_tree_sort, sort_with
from .starpath import brute_force_opt_stable, heap_to_geo, geo_to_heap
from .transform import general_transform, smooth_transform

__all__ = [
    "HeapForest",
    "brute_force_opt_stable",
    "cartesian_tree_sort",
    "check_equivalence",
    "gen_random",
    "gen_tilted_grid",
    "general_transform",
    "geo_to_heap",
    "greedy_future",
    "greedy_nondet",
    "greedy_sweep",
    "heap_to_geo",
    "inverse",
    "is_satisfied",
    "point_set_of",
    "replay_insert_mode",
    "restructure_nondet",
    "restructure_twopass",
    "smooth_transform",
    "sort_mode_run",
    "sort_with",
    "treapify",
]

__version__ = "0.1.0"
