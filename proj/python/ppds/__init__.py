"""Projected primal-dual splitting for constrained composite problems."""

from ._ppds import (
    DegenerateOracle,
    EqualityConstrainedL1,
    InconsistentInstance,
    StepsizeRegimeMismatch,
    __version__,
    cp_solve,
    gen_instance,
    l1_lp_oracle,
    linear_rate_params,
    operator_norm,
    pcp_solve,
    region_grid,
    run_experiment,
    soft_threshold,
    stepsize_region_membership,
    validate_stepsizes,
)

__all__ = [
    "DegenerateOracle",
    "EqualityConstrainedL1",
    "InconsistentInstance",
    "StepsizeRegimeMismatch",
    "__version__",
    "cp_solve",
    "gen_instance",
    "l1_lp_oracle",
    "linear_rate_params",
    "operator_norm",
    "pcp_solve",
    "region_grid",
    "run_experiment",
    "soft_threshold",
    "stepsize_region_membership",
    "validate_stepsizes",
]
