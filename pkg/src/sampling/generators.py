"""Samplers for the benchmark supports.

Square minus triangle:
    uniform on [0,1]² minus the closed triangle with apex (1/2, 1/2) and base
    (1/2 ± tan(φ/2)/2, 0), by rejection from the square.

S-shape of radius R:
    branch ∈ {upper, lower} with probability 1/2,
    θ ~ U[3π(R−1)/(2R), 3π/2], radial offset u from the noise law,
    upper: (R+u)(cos θ, sin θ) + (0, R)
    lower: the upper branch's curve reflected, then shifted by (0, −R)
    R = ∞: the rectangle limit, x uniform on its length, y = u.

Convex regions (disk, rectangle, polygon):
    uniform by rejection from the bounding box.
"""

import logging
import math
from typing import Union

import numpy as np
from numpy.typing import ArrayLike

from src.geometry.regions import ConvexRegion, RegionLike, as_region
from src.models.errors import InvalidParams, InvalidShape
from src.models.parameters import NoiseSpec
from src.models.sample import Sample
from src.models.shapes import (
    DiskShape,
    PolygonShape,
    RectangleShape,
    ShapeSpec,
    SquareMinusTriangle,
    SShape,
)
from src.sampling.rng import SeededRng, as_generator

logger = logging.getLogger(__name__)

RngLike = Union[SeededRng, np.random.Generator, int]

_MEMBERSHIP_TOL = 1e-9
_rectangle_noted = False


def _check_count(n: int) -> None:
    if n < 1:
        raise InvalidParams(f"Sample size must satisfy n ≥ 1, got n={n}")


def truncated_normal(
    sigma: float, bound: float, rng: RngLike, size: int = 1
) -> np.ndarray:
    """N(0, σ²) conditioned on |value| ≤ bound, by rejection."""
    if not (sigma > 0.0 and bound > 0.0):
        raise InvalidShape(f"Truncated normal needs σ > 0 and bound > 0, got σ={sigma}, bound={bound}")
    gen = as_generator(rng)
    out = np.empty(0)
    while len(out) < size:
        draw = gen.normal(0.0, sigma, size=size - len(out))
        out = np.concatenate([out, draw[np.abs(draw) <= bound]])
    return out


def radial_offsets(noise: NoiseSpec, n: int, rng: RngLike) -> np.ndarray:
    gen = as_generator(rng)
    if noise.kind == "uniform":
        return gen.uniform(-noise.bound, noise.bound, size=n)
    return truncated_normal(noise.sigma, noise.bound, gen, size=n)


def in_square_minus_triangle(phi: float, points: ArrayLike, tol: float = 0.0) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    x, y = pts[:, 0], pts[:, 1]
    in_square = (x >= -tol) & (x <= 1.0 + tol) & (y >= -tol) & (y <= 1.0 + tol)
    in_triangle = (y <= 0.5) & (np.abs(x - 0.5) <= math.tan(phi / 2.0) * (0.5 - y))
    return in_square & ~in_triangle


def sample_square_minus_triangle(phi: float, n: int, rng: RngLike) -> Sample:
    """n iid uniform points on [0,1]² minus the notch of apex angle φ."""
    shape = SquareMinusTriangle(phi=phi)
    _check_count(n)
    gen = as_generator(rng)
    accept = 1.0 - shape.notch_area
    chunks = []
    have = 0
    while have < n:
        batch = int(math.ceil((n - have) / accept * 1.1)) + 16
        proposals = gen.uniform(0.0, 1.0, size=(batch, 2))
        kept = proposals[in_square_minus_triangle(phi, proposals)]
        chunks.append(kept)
        have += len(kept)
    return Sample(points=np.concatenate(chunks)[:n], provenance="generated")


def _s_shape_frame(shape: SShape, points: np.ndarray):
    """Map points of each branch to the upper branch's polar frame."""
    R = shape.R
    upper = points - np.array([0.0, R])
    if shape.reflection == "point":
        lower = -(points - np.array([0.0, -R]))
    else:
        lower = np.column_stack([-points[:, 0], points[:, 1] + R])
    return upper, lower


def in_s_shape(shape: SShape, points: ArrayLike, tol: float = _MEMBERSHIP_TOL) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    bound = shape.noise.bound
    if math.isinf(shape.R):
        lo, hi = shape.rectangle_x_range
        return (
            (pts[:, 0] >= lo - tol) & (pts[:, 0] <= hi + tol) & (np.abs(pts[:, 1]) <= bound + tol)
        )
    theta_lo, theta_hi = shape.theta_range
    inside = np.zeros(len(pts), dtype=bool)
    for rel in _s_shape_frame(shape, pts):
        rho = np.hypot(rel[:, 0], rel[:, 1])
        theta = np.mod(np.arctan2(rel[:, 1], rel[:, 0]), 2.0 * math.pi)
        # θ = 0 and θ = 2π are the same direction
        theta = np.where(theta > theta_hi + tol, theta - 2.0 * math.pi, theta)
        inside |= (
            (np.abs(rho - shape.R) <= bound + tol)
            & (theta >= theta_lo - tol)
            & (theta <= theta_hi + tol)
        )
    return inside


def sample_s_shape(
    R: float,
    noise: NoiseSpec,
    n: int,
    rng: RngLike,
    reflection: str = "point",
) -> Sample:
    """n points of the S-shaped band of radius R (``math.inf`` for the rectangle)."""
    global _rectangle_noted
    shape = SShape(R=R, noise=noise, reflection=reflection)  # type: ignore[arg-type]
    _check_count(n)
    gen = as_generator(rng)
    if math.isinf(R):
        if not _rectangle_noted:
            _rectangle_noted = True
            lo, hi = shape.rectangle_x_range
            logger.info(
                f"S-shape rectangle limit uses x ∈ [{lo:.6g}, {hi:.6g}] (each branch has length 3π/2)"
            )
        lo, hi = shape.rectangle_x_range
        x = gen.uniform(lo, hi, size=n)
        u = radial_offsets(noise, n, gen)
        return Sample(points=np.column_stack([x, u]), provenance="generated")
    upper = gen.random(n) < 0.5
    theta_lo, theta_hi = shape.theta_range
    theta = gen.uniform(theta_lo, theta_hi, size=n)
    u = radial_offsets(noise, n, gen)
    radius = R + u
    cx, cy = radius * np.cos(theta), radius * np.sin(theta)
    if reflection == "point":
        lower_x, lower_y = -cx, -cy - R
    else:
        lower_x, lower_y = -cx, cy - R
    x = np.where(upper, cx, lower_x)
    y = np.where(upper, cy + R, lower_y)
    return Sample(points=np.column_stack([x, y]), provenance="generated")


def sample_region(region: RegionLike, n: int, rng: RngLike) -> Sample:
    """n iid uniform points on a convex region, by rejection from its bounding box."""
    _check_count(n)
    reg: ConvexRegion = as_region(region)
    gen = as_generator(rng)
    xmin, ymin, xmax, ymax = reg.bounding_box
    accept = reg.area / ((xmax - xmin) * (ymax - ymin))
    chunks = []
    have = 0
    while have < n:
        batch = int(math.ceil((n - have) / accept * 1.1)) + 16
        proposals = np.column_stack(
            [gen.uniform(xmin, xmax, size=batch), gen.uniform(ymin, ymax, size=batch)]
        )
        kept = proposals[reg.contains(proposals)]
        chunks.append(kept)
        have += len(kept)
    return Sample(points=np.concatenate(chunks)[:n], provenance="generated")


def draw_sample(shape: ShapeSpec, n: int, rng: RngLike) -> Sample:
    """Sample n points from any shape specification."""
    if isinstance(shape, SquareMinusTriangle):
        return sample_square_minus_triangle(shape.phi, n, rng)
    if isinstance(shape, SShape):
        return sample_s_shape(shape.R, shape.noise, n, rng, reflection=shape.reflection)
    if isinstance(shape, (DiskShape, RectangleShape, PolygonShape)):
        return sample_region(shape, n, rng)
    raise InvalidShape(f"Unknown shape {type(shape).__name__}")


def membership(shape: ShapeSpec, points: ArrayLike) -> np.ndarray:
    """Membership of each point in the closed support of ``shape``."""
    if isinstance(shape, SquareMinusTriangle):
        return in_square_minus_triangle(shape.phi, points, tol=_MEMBERSHIP_TOL)
    if isinstance(shape, SShape):
        return in_s_shape(shape, points)
    if isinstance(shape, (DiskShape, RectangleShape, PolygonShape)):
        return as_region(shape).contains(points, tol=_MEMBERSHIP_TOL)
    raise InvalidShape(f"Unknown shape {type(shape).__name__}")
