"""Acyclic colourings of random graphs: exact solvers, constructive colourings,
a refutation gadget and Monte Carlo harnesses for the critical exponent."""

from .bounds import (
    BernoulliSum,
    ExponentBounds,
    beta_crit_bounds,
    chernoff_bound,
    empirical_tail,
    expected_cycle_bracket,
    expected_cycle_count,
    short_cycle_fraction,
)
from .colouring import (
    AcyclicityReport,
    Colouring,
    ExactAcyclicColouring,
    LLLPathColouring,
    PowerGraphColouring,
    acyclic_upper_colouring,
    build_partition_graph,
    check_lll_conditions,
    chi_exact,
    choose_g,
    is_proper,
    lll_path_colouring,
    power_graph,
    refute_colouring,
    theta_bound,
    verify_eta_c,
)
from .cycles import (
    Cycle,
    CycleCensus,
    count_cycles,
    cycle_census,
    enumerate_cycles,
    estimate_path_probability,
    has_path_of_length,
    lemma1_bound,
)
from .exceptions import (
    BudgetExhausted,
    CapExceeded,
    DomainError,
    InsufficientData,
    OddCUnsupported,
    ResampleBudgetExhausted,
    SolverTimeout,
)
from .experiments import (
    ExponentFit,
    SweepConfig,
    TrialRecord,
    fit_exponents,
    refutation_rate,
    run_sweep,
)
from .graph import (
    DensityReport,
    EdgeProbabilityModel,
    Graph,
    check_graph,
    edge_density_check,
    max_degree,
    sample_graph,
)

__version__ = "0.1.0"

__all__ = [
    "acyclic_upper_colouring",
    "AcyclicityReport",
    "BernoulliSum",
    "beta_crit_bounds",
    "BudgetExhausted",
    "build_partition_graph",
    "CapExceeded",
    "check_graph",
    "check_lll_conditions",
    "chernoff_bound",
    "chi_exact",
    "choose_g",
    "Colouring",
    "count_cycles",
    "Cycle",
    "cycle_census",
    "CycleCensus",
    "DensityReport",
    "DomainError",
    "edge_density_check",
    "EdgeProbabilityModel",
    "empirical_tail",
    "enumerate_cycles",
    "estimate_path_probability",
    "ExactAcyclicColouring",
    "expected_cycle_bracket",
    "expected_cycle_count",
    "ExponentBounds",
    "ExponentFit",
    "fit_exponents",
    "Graph",
    "has_path_of_length",
    "InsufficientData",
    "is_proper",
    "lemma1_bound",
    "lll_path_colouring",
    "LLLPathColouring",
    "max_degree",
    "OddCUnsupported",
    "power_graph",
    "PowerGraphColouring",
    "refutation_rate",
    "refute_colouring",
    "ResampleBudgetExhausted",
    "run_sweep",
    "sample_graph",
    "short_cycle_fraction",
    "SolverTimeout",
    "SweepConfig",
    "theta_bound",
    "TrialRecord",
    "verify_eta_c",
]
