"""Kernel density estimation and the Voronoi-max plug-in estimator.

    f_n(x) = (1 / (n h²)) Σ_i K((x − X_i) / h)
    f̂_n(x) = max_{i : x ∈ Vor(X_i)} f_n(X_i) · 𝟙{x ∈ 𝓗(ℵ_n)}

f̂_n is constant on every Voronoi cell of the sample and vanishes outside the
convex hull. Points on a cell boundary take the largest of the tied values.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from numpy.typing import ArrayLike
from scipy.spatial.distance import cdist

from src.geometry.hull import ConvexPolygon, convex_hull
from src.geometry.voronoi import TIE_RTOL, VoronoiDiagram, voronoi_from_sites
from src.models.errors import (
    DensityDomainMismatch,
    EmptyInput,
    InvalidBandwidth,
    InvalidParams,
    ZeroSpread,
)
from src.models.parameters import BandwidthSpec, KernelSpec
from src.models.sample import Sample, points_of

logger = logging.getLogger(__name__)

_CHUNK = 4096
_MAX_TIES = 8


def _check_bandwidth(h: float) -> None:
    if not (h > 0.0 and math.isfinite(h)):
        raise InvalidBandwidth(f"Bandwidth must satisfy h > 0, got h={h}")


def kde(points: Union[Sample, ArrayLike], h: float, k: KernelSpec, queries: ArrayLike) -> np.ndarray:
    """Kernel density estimate f_n at every query point."""
    _check_bandwidth(h)
    sites = points_of(points)
    if len(sites) == 0:
        raise EmptyInput("Kernel density estimate needs at least one point")
    xs = np.atleast_2d(np.asarray(queries, dtype=float))
    scale = k.normalization / (len(sites) * h * h)
    out = np.empty(len(xs))
    for start in range(0, len(xs), _CHUNK):
        sq = cdist(xs[start:start + _CHUNK], sites, metric="sqeuclidean") / (h * h)
        if k.kind == "gaussian":
            weights = np.exp(-0.5 * sq)
        else:
            weights = (sq <= 1.0).astype(float)
        out[start:start + _CHUNK] = scale * weights.sum(axis=1)
    return out


def kde_at(points: Union[Sample, ArrayLike], h: float, k: KernelSpec, x: ArrayLike) -> float:
    """Kernel density estimate f_n at a single point."""
    return float(kde(points, h, k, np.asarray(x, dtype=float).reshape(1, 2))[0])


def default_bandwidth(points: Union[Sample, ArrayLike], spec: BandwidthSpec, d: int = 2) -> float:
    """Bandwidth from a fixed value or the scaled rule h0·σ̂·n^{−1/(d+4)}.

    σ̂ is the mean of the coordinatewise sample standard deviations.

    Raises:
        ZeroSpread: All points identical under the scaled rule
    """
    if spec.rule == "fixed":
        return spec.value
    pts = points_of(points)
    n = len(pts)
    if n < 2:
        raise InvalidParams(f"Scaled bandwidth needs n ≥ 2 points, got n={n}")
    sigma = float(np.std(pts, axis=0, ddof=1).mean())
    if not sigma > 0.0:
        raise ZeroSpread("All points coincide; the scaled bandwidth is undefined")
    return spec.value * sigma * n ** (-1.0 / (d + 4))


@dataclass(frozen=True, eq=False)
class DensityEstimate:
    """Piecewise-constant density on the Voronoi cells of ``sites``.

    Attributes:
        sites: (n, 2) cell generators
        cell_values: (n,) value on each cell, ≥ 0
        hull: Support of the estimate
        diagram: Voronoi diagram of the sites
        bandwidth: Kernel bandwidth the values came from, if any
    """

    sites: np.ndarray
    cell_values: np.ndarray
    hull: ConvexPolygon
    diagram: VoronoiDiagram = field(repr=False)
    bandwidth: Optional[float] = None

    def __post_init__(self) -> None:
        values = np.asarray(self.cell_values, dtype=float)
        if values.shape != (len(self.sites),):
            raise InvalidParams(
                f"Need one cell value per site, got {values.shape} for {len(self.sites)} sites"
            )
        if np.any(values < 0.0) or not np.all(np.isfinite(values)):
            raise InvalidParams("Cell values must be finite and non-negative")
        values.setflags(write=False)
        object.__setattr__(self, "cell_values", values)

    @classmethod
    def constant(
        cls, sites: Union[Sample, ArrayLike], hull: ConvexPolygon, value: float
    ) -> "DensityEstimate":
        """Estimate equal to ``value`` on every cell."""
        pts = points_of(sites)
        return cls(
            sites=pts,
            cell_values=np.full(len(pts), float(value)),
            hull=hull,
            diagram=voronoi_from_sites(pts),
        )

    def covers(self, hull: ConvexPolygon) -> bool:
        """True when this estimate's support contains ``hull``."""
        tol = 1e-9 * max(1.0, self.hull.diameter)
        return bool(self.hull.contains(hull.vertices, tol=tol).all())

    def evaluate(self, points: ArrayLike) -> np.ndarray:
        """f̂_n at each point: max of tied cell values, 0 outside the hull."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        dist, idx = self.diagram.query(pts, k=_MAX_TIES)
        tied = dist <= dist[:, :1] * (1.0 + TIE_RTOL)
        values = np.where(tied, self.cell_values[idx], -np.inf).max(axis=1)
        inside = self.hull.contains(pts, tol=1e-12 * max(1.0, self.hull.diameter))
        return np.where(inside, values, 0.0)

    def __call__(self, x: ArrayLike) -> float:
        return float(self.evaluate(np.asarray(x, dtype=float).reshape(1, 2))[0])


def voronoi_max_estimator(
    points: Union[Sample, ArrayLike], h: float, k: KernelSpec
) -> DensityEstimate:
    """Voronoi-max estimator: f_n at each site, spread over its Voronoi cell.

    Raises:
        DegenerateInput: Hull not constructible
        InvalidBandwidth: h ≤ 0
    """
    _check_bandwidth(h)
    pts = points_of(points)
    hull = convex_hull(pts)
    values = kde(pts, h, k, pts)
    logger.debug(
        f"Voronoi-max estimate: n={len(pts)}, h={h:.4g}, "
        f"cell values in [{values.min():.4g}, {values.max():.4g}]"
    )
    return DensityEstimate(
        sites=pts,
        cell_values=values,
        hull=hull,
        diagram=voronoi_from_sites(pts),
        bandwidth=h,
    )


def require_cover(dens: DensityEstimate, hull: ConvexPolygon) -> None:
    """Raise DensityDomainMismatch unless ``dens`` is defined on all of ``hull``."""
    if not dens.covers(hull):
        raise DensityDomainMismatch("Density estimate does not cover the hull")
