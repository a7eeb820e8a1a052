"""Block-sparse compressed sensing by zero-point attracting projection."""

from ._core import (
    DimensionError,
    FormatError,
    ParameterError,
    RankError,
    bomp_solve,
    bzap_solve,
    cost_J,
    f_alpha,
    gen_matrix,
    gen_noise,
    gen_signal,
    grad_J,
    l21_solve,
    oracle_solve,
    project,
    radius_d,
    run_fig1,
    theorem1_bound,
    zap_solve,
)

__all__ = [
    "DimensionError",
    "FormatError",
    "ParameterError",
    "RankError",
    "bomp_solve",
    "bzap_solve",
    "cost_J",
    "f_alpha",
    "gen_matrix",
    "gen_noise",
    "gen_signal",
    "grad_J",
    "l21_solve",
    "oracle_solve",
    "project",
    "radius_d",
    "run_fig1",
    "theorem1_bound",
    "zap_solve",
]
