"""Consistency/robustness tradeoffs for search games with predictions.

Thin wrapper over the compiled extension; every public symbol comes from
searchgames._core.
"""

from searchgames._core import (
    BoxInstance,
    alpha_star,
    best_response_value_hk,
    beta_star,
    estimate_cr_sk,
    estimate_cr_sstar,
    expected_ratio_biased,
    expected_times_sk,
    expected_times_sstar,
    frontier_imperfect,
    frontier_line,
    frontier_perfect,
    lambda_objective,
    lower_bound_value,
    normalized_cost,
    optimal_alpha,
    payoff_vs_density,
    rho_star,
    run_verification,
    search_cost,
    solve_matrix_game,
    upper_bounds,
    value_imperfect,
    value_imperfect_subset,
    value_perfect,
    value_perfect_subset,
)

__all__ = [
    "BoxInstance",
    "alpha_star",
    "best_response_value_hk",
    "beta_star",
    "estimate_cr_sk",
    "estimate_cr_sstar",
    "expected_ratio_biased",
    "expected_times_sk",
    "expected_times_sstar",
    "frontier_imperfect",
    "frontier_line",
    "frontier_perfect",
    "lambda_objective",
    "lower_bound_value",
    "normalized_cost",
    "optimal_alpha",
    "payoff_vs_density",
    "rho_star",
    "run_verification",
    "search_cost",
    "solve_matrix_game",
    "upper_bounds",
    "value_imperfect",
    "value_imperfect_subset",
    "value_perfect",
    "value_perfect_subset",
]
