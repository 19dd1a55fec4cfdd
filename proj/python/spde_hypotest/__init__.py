"""Hypothesis tests for the drift of a stochastic fractional heat equation.

Thin re-export of the compiled core. The heavy lifting (simulation,
likelihood analytics, Monte Carlo drivers) lives in C++; this package keeps
the Python surface identical to the C++ one.
"""

from ._core import (
    HypothesisPair,
    McPlan,
    McPoint,
    McReport,
    ModeTrajectories,
    ModelSpec,
    NtildeDecomposition,
    OuDecomposition,
    Regime,
    SaddlePoint,
    SldContext,
    SpectralBasis,
    SufficientStats,
    TestOutcome,
    TestSpec,
    Under,
    alpha1_N,
    alpha1_T,
    c_limit,
    cgf_check,
    cgf_logL,
    compare_tests,
    decide,
    eps_lower,
    estimate_error_rate,
    estimator_error_standardized,
    log_a_N,
    log_a_T,
    log_likelihood_ratio,
    log_threshold_N,
    log_threshold_T,
    make_interval_basis,
    make_powerlaw_basis,
    make_sld_context,
    mle,
    normal_cdf,
    normal_draw,
    normal_pdf,
    normal_quantile,
    normality_check,
    ntilde_decomposition,
    ou_decomposition,
    phi1_phi2,
    rate_I,
    saddle_N,
    saddle_T,
    simulate,
    simulate_stats,
    sld_typeII_check,
    spectral_sum_M,
    statistic_I_T,
    statistic_S_N,
    sufficient_stats,
    typeII_slope_check,
)

__all__ = [
    "HypothesisPair",
    "McPlan",
    "McPoint",
    "McReport",
    "ModeTrajectories",
    "ModelSpec",
    "NtildeDecomposition",
    "OuDecomposition",
    "Regime",
    "SaddlePoint",
    "SldContext",
    "SpectralBasis",
    "SufficientStats",
    "TestOutcome",
    "TestSpec",
    "Under",
    "alpha1_N",
    "alpha1_T",
    "c_limit",
    "cgf_check",
    "cgf_logL",
    "compare_tests",
    "decide",
    "eps_lower",
    "estimate_error_rate",
    "estimator_error_standardized",
    "log_a_N",
    "log_a_T",
    "log_likelihood_ratio",
    "log_threshold_N",
    "log_threshold_T",
    "make_interval_basis",
    "make_powerlaw_basis",
    "make_sld_context",
    "mle",
    "normal_cdf",
    "normal_draw",
    "normal_pdf",
    "normal_quantile",
    "normality_check",
    "ntilde_decomposition",
    "ou_decomposition",
    "phi1_phi2",
    "rate_I",
    "saddle_N",
    "saddle_T",
    "simulate",
    "simulate_stats",
    "sld_typeII_check",
    "spectral_sum_M",
    "statistic_I_T",
    "statistic_S_N",
    "sufficient_stats",
    "typeII_slope_check",
]
