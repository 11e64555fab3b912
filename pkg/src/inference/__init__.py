"""Spacing statistics, density estimation and convexity tests."""

from src.inference.constants import (
    alpha_ball,
    alpha_cube,
    band_statistic,
    critical_value,
    gumbel_cdf,
    gumbel_quantile,
    omega,
    p_value,
    u_statistic,
)
from src.inference.convexity import test_nonparametric, test_semi_parametric
from src.inference.density import (
    DensityEstimate,
    default_bandwidth,
    kde,
    kde_at,
    voronoi_max_estimator,
)
from src.inference.spacing import (
    inner_radius,
    known_support_spacing,
    semi_parametric_statistic,
    uniform_spacing,
    weighted_spacing,
)

__all__ = [
    "DensityEstimate",
    "alpha_ball",
    "alpha_cube",
    "band_statistic",
    "critical_value",
    "default_bandwidth",
    "gumbel_cdf",
    "gumbel_quantile",
    "inner_radius",
    "kde",
    "kde_at",
    "known_support_spacing",
    "omega",
    "p_value",
    "semi_parametric_statistic",
    "test_nonparametric",
    "test_semi_parametric",
    "u_statistic",
    "uniform_spacing",
    "voronoi_max_estimator",
    "weighted_spacing",
]
