"""Figure rendering for ppmsched sweep results."""

from .render import (
    FIGURES,
    SchemaError,
    benchmarks_series,
    detect_sweep_axis,
    load_results,
    param_sweep_series,
    passes_series,
    ports_series,
    render,
)

__version__ = "0.1.0"

__all__ = [
    "FIGURES",
    "SchemaError",
    "benchmarks_series",
    "detect_sweep_axis",
    "load_results",
    "param_sweep_series",
    "passes_series",
    "ports_series",
    "render",
]
