"""Stochastic collocation for correlated Gaussian-mixture parameters."""

from ._core import (
    Error,
    GaussianMixture,
    MomentTable,
    OrthoBasis,
    QuadratureRule,
    SolverConfig,
    Statistics,
    Surrogate,
    __version__,
    adaptive_rule,
    assemble_phi,
    bcd_solve,
    benchmark_mixture,
    benchmark_model,
    enumerate_indices,
    evaluate_builtin,
    gram_schmidt,
    init_nodes,
    project,
    raw_moments,
    solve_weights,
)

__all__ = [
    "Error",
    "GaussianMixture",
    "MomentTable",
    "OrthoBasis",
    "QuadratureRule",
    "SolverConfig",
    "Statistics",
    "Surrogate",
    "__version__",
    "adaptive_rule",
    "assemble_phi",
    "bcd_solve",
    "benchmark_mixture",
    "benchmark_model",
    "enumerate_indices",
    "evaluate_builtin",
    "gram_schmidt",
    "init_nodes",
    "project",
    "raw_moments",
    "solve_weights",
]
