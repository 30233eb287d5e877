"""Colouring verification, exact solving and the constructive routes."""

from .base import (
    AcyclicityReport,
    Colouring,
    colour_subsets,
    find_low_colour_cycle,
    find_low_colour_path,
    is_proper,
    verify_eta_c,
)
from .estimators import ExactAcyclicColouring, LLLPathColouring, PowerGraphColouring
from .exact import EXACT_N_CAP, chi_exact
from .lll import (
    check_lll_conditions,
    choose_g,
    find_violated_event,
    lll_path_colouring,
    theta_bound,
    theta_value,
)
from .power import acyclic_upper_colouring, greedy_colouring, power_graph
from .refute import PartitionGraph, build_partition_graph, expand_meta_path, refute_colouring

__all__ = [
    "AcyclicityReport",
    "Colouring",
    "EXACT_N_CAP",
    "ExactAcyclicColouring",
    "LLLPathColouring",
    "PartitionGraph",
    "PowerGraphColouring",
    "acyclic_upper_colouring",
    "build_partition_graph",
    "check_lll_conditions",
    "chi_exact",
    "choose_g",
    "colour_subsets",
    "expand_meta_path",
    "find_low_colour_cycle",
    "find_low_colour_path",
    "find_violated_event",
    "greedy_colouring",
    "is_proper",
    "lll_path_colouring",
    "power_graph",
    "refute_colouring",
    "theta_bound",
    "theta_value",
    "verify_eta_c",
]
