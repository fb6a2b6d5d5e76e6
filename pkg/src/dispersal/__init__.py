"""Minimum-cost dispersal of geometric objects into non-overlapping position.

The solvers move unit intervals, unit circular arcs and weighted unit
intervals so that no two overlap, minimising the total (weighted) distance
moved. Everything is computed in exact rational arithmetic.
"""

from .arcs import ArcInstance, disperse_arcs, solve_arcs
from .assignment import SlotSet, assign_slots, min_cost_perfect_matching, solve_matching
from .geometry import (
    Arc,
    Ball,
    Box,
    DimensionError,
    InfeasibleError,
    IntersectionGraph,
    Interval,
    WeightedInstance,
    apply_dispersal,
    class_check,
    intersection_graph,
    weighted_cost,
)
from .hardness import (
    ThreePartitionInstance,
    check_yes_packing,
    gen_2d_instance,
    gen_interval_instance,
    threshold_T,
)
from .kernels import BACKEND
from .oracle import Certificate, brute_force_arcs, brute_force_intervals, verify_certificate
from .unit import disperse_unit_intervals
from .weighted import disperse_clique, disperse_xp, maximal_cliques

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "ArcInstance",
    "BACKEND",
    "Ball",
    "Box",
    "Certificate",
    "DimensionError",
    "InfeasibleError",
    "IntersectionGraph",
    "Interval",
    "SlotSet",
    "ThreePartitionInstance",
    "WeightedInstance",
    "apply_dispersal",
    "assign_slots",
    "brute_force_arcs",
    "brute_force_intervals",
    "check_yes_packing",
    "class_check",
    "disperse_arcs",
    "disperse_clique",
    "disperse_unit_intervals",
    "disperse_xp",
    "gen_2d_instance",
    "gen_interval_instance",
    "intersection_graph",
    "maximal_cliques",
    "min_cost_perfect_matching",
    "solve_arcs",
    "solve_matching",
    "threshold_T",
    "verify_certificate",
    "weighted_cost",
]
