"""Convexity tests built on maximal spacings.

Semi-parametric test (uniform sample assumed):
    statistic Ṽ_n = ω_2·R(𝓗∖ℵ_n)²/|𝓗(ℵ_n)|, reject when Ṽ_n > c_{n,γ}

Nonparametric test (unknown density, Voronoi-max estimate f̂_n):
    statistic V̂_n = δ̂(𝓗∖ℵ_n)², reject when V̂_n ≥ c_{n,γ}

Both share c_{n,γ} with α = α_ball(2) and the Gumbel p-value
p = 1 − exp(−exp(−U)). Since U = n·statistic − centering, the decision is
equivalent to p < γ (resp. p ≤ γ).
"""

import logging
from typing import Optional, Union

from numpy.typing import ArrayLike

from src.geometry.hull import convex_hull
from src.inference.constants import critical_value, p_value
from src.inference.density import DensityEstimate, default_bandwidth, voronoi_max_estimator
from src.inference.spacing import as_sample, semi_parametric_statistic, weighted_spacing
from src.models.parameters import BandwidthSpec, KernelSpec, LimitParams
from src.models.sample import Sample
from src.models.solution import LEVEL_NOTES, SpacingStatistics, TestResult

logger = logging.getLogger(__name__)


def _result(
    method: str,
    stats: SpacingStatistics,
    params: LimitParams,
    reject: bool,
    critical: float,
    bandwidth: Optional[float] = None,
    seed: Optional[int] = None,
) -> TestResult:
    return TestResult(
        method=method,  # type: ignore[arg-type]
        statistic=stats.V,
        critical=critical,
        u_value=stats.U,
        p_value=p_value(stats.U),
        reject=reject,
        gamma_level=params.gamma_level,
        witness=stats.witness,
        hull_area=stats.support_area,
        R=stats.R,
        n=params.n,
        bandwidth=bandwidth,
        level_note=LEVEL_NOTES[method],
        seed=seed,
    )


def test_semi_parametric(
    points: Union[Sample, ArrayLike], gamma_level: float = 0.05, seed: Optional[int] = None
) -> TestResult:
    """Level-γ convexity test for a sample assumed uniform on its support.

    Raises:
        DegenerateInput: Hull not constructible
        InvalidParams: γ outside (0, 1)
    """
    sample = as_sample(points)
    stats = semi_parametric_statistic(sample, gamma_level=gamma_level)
    params = stats.params
    critical = critical_value(params)
    reject = stats.V > critical
    logger.debug(
        f"Semi-parametric: n={params.n}, statistic={stats.V:.6g}, c={critical:.6g}, reject={reject}"
    )
    return _result("semi_parametric", stats, params, reject, critical, seed=seed)


def test_nonparametric(
    points: Union[Sample, ArrayLike],
    gamma_level: float = 0.05,
    k: Optional[KernelSpec] = None,
    bw: Optional[BandwidthSpec] = None,
    density: Optional[DensityEstimate] = None,
    seed: Optional[int] = None,
) -> TestResult:
    """Level-γ convexity test with a Voronoi-max density estimate.

    ``density`` replaces the estimate built from ``k`` and ``bw`` (for
    instance ``DensityEstimate.constant`` with value 1/|𝓗|).

    Raises:
        DegenerateInput: Hull not constructible
        InvalidBandwidth: Non-positive bandwidth
    """
    sample = as_sample(points)
    kernel = k if k is not None else KernelSpec()
    rule = bw if bw is not None else BandwidthSpec()
    hull = convex_hull(sample.points)
    params = LimitParams.for_ball(sample.n, gamma_level=gamma_level)
    if density is None:
        h = default_bandwidth(sample, rule)
        density = voronoi_max_estimator(sample, h, kernel)
    stats = weighted_spacing(sample, hull, density, params)
    critical = critical_value(params)
    reject = stats.V >= critical
    logger.debug(
        f"Nonparametric: n={params.n}, statistic={stats.V:.6g}, c={critical:.6g}, reject={reject}"
    )
    return _result("nonparametric", stats, params, reject, critical, density.bandwidth, seed)


# keep pytest from collecting the public test functions when imported into test modules
test_semi_parametric.__test__ = False  # type: ignore[attr-defined]
test_nonparametric.__test__ = False  # type: ignore[attr-defined]
