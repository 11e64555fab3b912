"""Convex regions: polygons (hulls, rectangles) and disks.

A region exposes membership, its area, and a signed distance that is the
Euclidean distance to the boundary for inside points and negative outside.
The empty-ball solver reads the boundary description directly: polygons as
supporting lines, disks as center and radius.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from numpy.typing import ArrayLike

from src.geometry.hull import ConvexPolygon, convex_hull, segment_distances
from src.models.errors import InvalidShape
from src.models.shapes import DiskShape, PolygonShape, RectangleShape


class ConvexRegion(ABC):
    """Bounded convex region with non-empty interior."""

    @property
    @abstractmethod
    def area(self) -> float:
        ...

    @property
    @abstractmethod
    def diameter(self) -> float:
        ...

    @property
    @abstractmethod
    def bounding_box(self) -> Tuple[float, float, float, float]:
        """(xmin, ymin, xmax, ymax)."""

    @abstractmethod
    def signed_distance(self, points: ArrayLike) -> np.ndarray:
        """(k,) boundary distance inside, negative outside."""

    def boundary_distance(self, points: ArrayLike) -> np.ndarray:
        """(k,) Euclidean distance to the boundary, inside or outside."""
        return np.abs(self.signed_distance(points))

    def contains(self, points: ArrayLike, tol: float = 0.0) -> np.ndarray:
        return self.signed_distance(points) >= -tol


@dataclass(frozen=True, eq=False)
class PolygonRegion(ConvexRegion):
    polygon: ConvexPolygon

    @property
    def area(self) -> float:
        return self.polygon.area

    @property
    def diameter(self) -> float:
        return self.polygon.diameter

    @property
    def bounding_box(self) -> Tuple[float, float, float, float]:
        lo = self.polygon.vertices.min(axis=0)
        hi = self.polygon.vertices.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    @property
    def normals(self) -> np.ndarray:
        return self.polygon.normals

    @property
    def offsets(self) -> np.ndarray:
        return self.polygon.offsets

    def signed_distance(self, points: ArrayLike) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        inner = self.polygon.signed_distance(pts)
        outside = inner < 0.0
        if outside.any():
            # the line minimum underestimates the distance beyond a vertex
            inner = inner.copy()
            inner[outside] = -segment_distances(self.polygon, pts[outside])
        return inner


@dataclass(frozen=True, eq=False)
class Rectangle(PolygonRegion):
    """Axis-aligned rectangle [x0, x0+width] × [y0, y0+height]."""

    @classmethod
    def from_corner(
        cls, corner: Tuple[float, float] = (0.0, 0.0), width: float = 1.0, height: float = 1.0
    ) -> "Rectangle":
        if not (width > 0.0 and height > 0.0):
            raise InvalidShape(f"Rectangle sides must be positive, got w={width}, h={height}")
        x0, y0 = corner
        verts = np.array([[x0, y0], [x0 + width, y0], [x0 + width, y0 + height], [x0, y0 + height]])
        return cls(polygon=ConvexPolygon(vertices=verts))


@dataclass(frozen=True)
class Disk(ConvexRegion):
    center: Tuple[float, float] = (0.0, 0.0)
    radius: float = 1.0

    def __post_init__(self) -> None:
        if not (self.radius > 0.0 and np.isfinite(self.radius)):
            raise InvalidShape(f"Disk radius must be positive and finite, got {self.radius}")
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))

    @property
    def area(self) -> float:
        return float(np.pi * self.radius ** 2)

    @property
    def diameter(self) -> float:
        return 2.0 * self.radius

    @property
    def bounding_box(self) -> Tuple[float, float, float, float]:
        cx, cy = self.center
        r = self.radius
        return cx - r, cy - r, cx + r, cy + r

    def signed_distance(self, points: ArrayLike) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        rel = pts - np.asarray(self.center)
        return self.radius - np.hypot(rel[:, 0], rel[:, 1])


RegionLike = Union[ConvexRegion, ConvexPolygon, DiskShape, RectangleShape, PolygonShape]


def as_region(obj: RegionLike) -> ConvexRegion:
    """Coerce polygons and convex shape specs to a region."""
    if isinstance(obj, ConvexRegion):
        return obj
    if isinstance(obj, ConvexPolygon):
        return PolygonRegion(polygon=obj)
    if isinstance(obj, DiskShape):
        return Disk(center=obj.center, radius=obj.radius)
    if isinstance(obj, RectangleShape):
        return Rectangle.from_corner(obj.corner, obj.width, obj.height)
    if isinstance(obj, PolygonShape):
        # canonical CCW loop without collinear vertices; rejects non-convex input
        hull = convex_hull(np.array(obj.vertices, dtype=float))
        if hull.m != len(obj.vertices):
            raise InvalidShape(
                f"Polygon vertices must form a strictly convex loop, hull has {hull.m} of {len(obj.vertices)}"
            )
        return PolygonRegion(polygon=hull)
    raise InvalidShape(f"Not a convex region: {type(obj).__name__}")
