"""Monotone heteroclinic profiles of the delayed Nicholson equation with harvesting."""

from ._core import (
    CheckReport,
    DerivedConstants,
    GridSpec,
    InfeasibleError,
    IterationResult,
    LowerSolution,
    ModelParams,
    MonotonicityBreach,
    Profile,
    UpperSolution,
    __version__,
    alpha_bound,
    check_compatibility,
    check_gamma_membership,
    check_hypotheses,
    chi0,
    cross_check,
    dde_residual,
    derive_constants,
    epsilon_window,
    feasible_beta_interval,
    find_lambda,
    iterate,
    positive_equilibrium,
    residual_lower,
    residual_upper,
    solve_sigma0,
    verify_lower,
    verify_upper,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
