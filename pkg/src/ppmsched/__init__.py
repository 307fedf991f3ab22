"""Scheduling of Pauli product measurements under per-qubit port budgets."""

from .errors import (
    DimensionError,
    NonCommutingError,
    ParseError,
    SizeLimitError,
    UnsupportedError,
    ValidationError,
)
from .grouping import (
    Grouping,
    GroupingMetrics,
    PortBudget,
    PortDemand,
    baseline_grouping,
    clique_then_split,
    fits_budget,
    greedy_cliques,
    hw_greedy,
    metrics,
    port_demand,
)
from .harness import (
    RandomSpec,
    ResultRow,
    SweepConfig,
    emit_results,
    gen_random_ppms,
    parse_results_csv,
    read_sweep_config,
    run_sweep,
)
from .ir import (
    GateCircuit,
    Measure,
    NonCliffordRotation,
    Ppm,
    PpmCircuit,
    Ppr,
    RotationAngle,
)
from .optimize import (
    RestructurePlan,
    StrategyConfig,
    brute_force_restructure,
    reshuffle_pass,
    restructure_clique,
    run_strategy,
)
from .pauli import (
    PauliString,
    SymplecticBasis,
    commutes,
    multiply,
    multiply_all,
    mutually_commuting,
    span_equal,
)
from .pbc import attach_resource_states, compile_to_pprs
from .ppm_text import emit_ppm_text, parse_ppm_text
from .qasm import parse_qasm_subset
from .tableau import CliffordGate, CliffordTableau

__version__ = "0.1.0"

__all__ = [
    "CliffordGate",
    "CliffordTableau",
    "DimensionError",
    "GateCircuit",
    "Grouping",
    "GroupingMetrics",
    "Measure",
    "NonCliffordRotation",
    "NonCommutingError",
    "ParseError",
    "PauliString",
    "Ppm",
    "PpmCircuit",
    "Ppr",
    "PortBudget",
    "PortDemand",
    "RandomSpec",
    "RestructurePlan",
    "ResultRow",
    "RotationAngle",
    "SizeLimitError",
    "StrategyConfig",
    "SweepConfig",
    "SymplecticBasis",
    "UnsupportedError",
    "ValidationError",
    "attach_resource_states",
    "baseline_grouping",
    "brute_force_restructure",
    "clique_then_split",
    "commutes",
    "compile_to_pprs",
    "emit_ppm_text",
    "emit_results",
    "fits_budget",
    "gen_random_ppms",
    "greedy_cliques",
    "hw_greedy",
    "metrics",
    "multiply",
    "multiply_all",
    "mutually_commuting",
    "parse_ppm_text",
    "parse_qasm_subset",
    "parse_results_csv",
    "port_demand",
    "read_sweep_config",
    "reshuffle_pass",
    "restructure_clique",
    "run_strategy",
    "run_sweep",
    "span_equal",
]
