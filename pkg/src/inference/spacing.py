"""Maximal-spacing statistics.

For a sample ℵ_n in a convex support S with the ball as reference body:

    R = radius of the largest ball in S free of sample points
    V = ω_d · R^d / |S|          (uniform density 1/|S|)
    Δ = V^{1/d}
    U = n·V − log n − (d−1)·log log n − log α_ball(d)

The semi-parametric statistic takes S = 𝓗(ℵ_n). The density-weighted version
replaces 1/|S| by a piecewise-constant density estimate f̂_n:

    δ̂ = sup_x (ω_d · f̂_n(x))^{1/d} · g(x),   V̂ = δ̂^d
"""

import dataclasses
import logging
from typing import Optional, Set, Union

import numpy as np
from numpy.typing import ArrayLike

from src.geometry.hull import ConvexPolygon, convex_hull
from src.geometry.regions import RegionLike, as_region
from src.inference.constants import omega, u_statistic
from src.inference.density import DensityEstimate, require_cover
from src.models.errors import InvalidDimension, InvalidParams
from src.models.parameters import LimitParams
from src.models.sample import Sample
from src.models.solution import EmptyBall, SpacingStatistics
from src.solvers.empty_ball import inscribed_ball, largest_empty_ball, weighted_empty_ball

logger = logging.getLogger(__name__)

_noted: Set[str] = set()


def _note_once(key: str, message: str) -> None:
    if key not in _noted:
        _noted.add(key)
        logger.info(message)


def as_sample(points: Union[Sample, ArrayLike]) -> Sample:
    if isinstance(points, Sample):
        return points
    sample = Sample.from_points(points)
    if sample.dedup_count:
        logger.info(f"Removed {sample.dedup_count} duplicate point(s); n={sample.n}")
    return sample


def _check_params(params: LimitParams, n: int) -> None:
    if params.d != 2:
        raise InvalidDimension(f"Spacing geometry is planar; got d={params.d}")
    if params.n != n:
        raise InvalidParams(f"Limit parameters are for n={params.n}, sample has n={n}")
    if n < 3:
        raise InvalidParams(f"Spacing statistics need n ≥ 3, got n={n}")


def _statistics(
    R: float, V: float, params: LimitParams, witness: EmptyBall, area: float, on_hull: bool = False
) -> SpacingStatistics:
    delta = V ** (1.0 / params.d)
    return SpacingStatistics(
        R=R,
        Delta=delta,
        V=delta ** params.d,
        U=u_statistic(params.n, delta ** params.d, params.d, params.alpha),
        params=params,
        witness=witness,
        support_area=area,
        on_hull=on_hull,
    )


def uniform_spacing(
    points: Union[Sample, ArrayLike],
    support: RegionLike,
    params: Optional[LimitParams] = None,
) -> SpacingStatistics:
    """Spacing statistics of a sample assumed uniform on a convex support.

    Raises:
        EmptyInput, PointOutsideRegion: From the empty-ball solver
    """
    sample = as_sample(points)
    region = as_region(support)
    params = params if params is not None else LimitParams.for_ball(sample.n)
    _check_params(params, sample.n)
    _note_once(
        "scaling",
        "Spacing volume uses V = ω_d·R^d/|S| (uniform plug-in; scale invariant)",
    )
    ball = largest_empty_ball(sample, region)
    area = region.area
    V = omega(params.d) * ball.radius ** params.d / area
    return _statistics(ball.radius, V, params, ball, area)


def semi_parametric_statistic(
    points: Union[Sample, ArrayLike], gamma_level: float = 0.05
) -> SpacingStatistics:
    """Uniform spacing with the sample's own convex hull as support.

    Raises:
        DegenerateInput: Fewer than 3 distinct points, or all collinear
    """
    sample = as_sample(points)
    hull = convex_hull(sample.points)
    params = LimitParams.for_ball(max(sample.n, 2), gamma_level=gamma_level)
    return dataclasses.replace(uniform_spacing(sample, hull, params), on_hull=True)


def known_support_spacing(
    points: Union[Sample, ArrayLike], support: RegionLike, gamma_level: float = 0.05
) -> SpacingStatistics:
    """Uniform spacing against a known support (ball reference body)."""
    sample = as_sample(points)
    params = LimitParams.for_ball(max(sample.n, 2), gamma_level=gamma_level)
    return uniform_spacing(sample, support, params)


def weighted_spacing(
    points: Union[Sample, ArrayLike],
    hull: ConvexPolygon,
    dens: DensityEstimate,
    params: Optional[LimitParams] = None,
) -> SpacingStatistics:
    """Density-weighted spacing δ̂ over the hull, maximized cell by cell.

    Raises:
        DensityDomainMismatch: ``dens`` is not defined on all of ``hull``
    """
    sample = as_sample(points)
    params = params if params is not None else LimitParams.for_ball(sample.n)
    _check_params(params, sample.n)
    require_cover(dens, hull)
    w = omega(params.d) * np.asarray(dens.cell_values, dtype=float)
    best = weighted_empty_ball(dens.sites, hull, w, diagram=dens.diagram)
    V = best.value ** params.d
    return _statistics(best.ball.radius, V, params, best.ball, hull.area, on_hull=True)


def inner_radius(region: RegionLike) -> float:
    """Maximal inner radius: radius of the largest ball inside a convex region."""
    return inscribed_ball(region).radius

