"""Expected zero densities and pattern sizes of Gaussian random cosine series."""

from ._nodalgauge import (
    Domain,
    UsageError,
    __version__,
    alpha_minus,
    alpha_plus,
    analytic_measure,
    birkhoff_cos2_average,
    correction_coefficient,
    count_zeros,
    density,
    evaluate,
    expected_zero_count,
    grid,
    modes,
    montecarlo,
    pattern_size,
    rational_exact,
    sample_coefficients,
    strong_set,
    weighted_cos2_average,
)

__all__ = [
    "Domain",
    "UsageError",
    "alpha_minus",
    "alpha_plus",
    "analytic_measure",
    "birkhoff_cos2_average",
    "correction_coefficient",
    "count_zeros",
    "density",
    "evaluate",
    "expected_zero_count",
    "grid",
    "modes",
    "montecarlo",
    "pattern_size",
    "rational_exact",
    "sample_coefficients",
    "strong_set",
    "weighted_cos2_average",
]
