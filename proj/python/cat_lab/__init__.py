"""Adaptive testing laboratory: IRT models, ability estimation, adaptive designs."""

from ._core import (
    AbilityEstimate,
    EstimatingMode,
    Item,
    ModelKind,
    RootMethod,
    __version__,
    check_n0_conditions,
    divergent_trajectory,
    find_n0,
    find_roots_raw,
    fisher_info,
    icc,
    ks_statistic,
    logistic,
    max_info_closed_form,
    mse_compare,
    normalizer_v,
    observed_info,
    optimal_difficulty,
    run_replications,
    score,
    solvable,
    solve_ability,
    weight,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
