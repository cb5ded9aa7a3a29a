"""Spectral distribution quantiles and the frequency-domain quantile test."""

from ._specquant import (
    ArgumentError,
    DegenerateInputError,
    DomainError,
    FormulaInconsistencyError,
    SpectralModel,
    autocovariance,
    default_bandwidth,
    estimate_raw,
    estimate_smoothed,
    mc_sigma,
    model_autocovariance,
    normal_quantile,
    plugin_sigma_gaussian,
    plugin_variance_bracket,
    power_study,
    quantile_test,
    raw_periodogram,
    replicate_seed,
    simulate,
    smoothed_density,
    spectral_cdf,
    spectral_density,
    symmetric_grid,
    true_quantile,
)

__all__ = [
    "ArgumentError",
    "DegenerateInputError",
    "DomainError",
    "FormulaInconsistencyError",
    "SpectralModel",
    "autocovariance",
    "default_bandwidth",
    "estimate_raw",
    "estimate_smoothed",
    "mc_sigma",
    "model_autocovariance",
    "normal_quantile",
    "plugin_sigma_gaussian",
    "plugin_variance_bracket",
    "power_study",
    "quantile_test",
    "raw_periodogram",
    "replicate_seed",
    "simulate",
    "smoothed_density",
    "spectral_cdf",
    "spectral_density",
    "symmetric_grid",
    "true_quantile",
]
