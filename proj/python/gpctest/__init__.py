"""Goodness-of-fit test for generalized Pareto copulas."""

from ._gpctest import (
    cdf,
    count_exceedances,
    default_threshold_grid,
    dnorm_lemma1,
    eigenvalues,
    estimate_extremal_coefficient,
    f_lambda_cdf,
    h_lambda_cdf,
    noncentrality,
    p_value,
    pvalue_curve,
    sample_clayton,
    sample_example_process,
    sample_gumbel,
    sample_lemma1,
    spectral_ratio_oracle,
    t_statistic,
    test_dataset,
)

__all__ = [
    "cdf",
    "count_exceedances",
    "default_threshold_grid",
    "dnorm_lemma1",
    "eigenvalues",
    "estimate_extremal_coefficient",
    "f_lambda_cdf",
    "h_lambda_cdf",
    "noncentrality",
    "p_value",
    "pvalue_curve",
    "sample_clayton",
    "sample_example_process",
    "sample_gumbel",
    "sample_lemma1",
    "spectral_ratio_oracle",
    "t_statistic",
    "test_dataset",
]
