"""Convex hull and convex-polygon measures.

Polygons are stored as CCW vertex loops with no three consecutive vertices
collinear. Every edge i (from vertex i to vertex i+1) has a supporting line
with inward unit normal ``normals[i]`` and offset ``offsets[i]``, so that

    line_distance_i(x) = normals[i] · x − offsets[i]

is the signed distance to edge i's line, positive inside. For points inside
the polygon, the distance to the boundary is the minimum over the lines.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike

from src.geometry.predicates import orient2d
from src.models.errors import DegenerateInput, InvalidParams
from src.models.sample import as_points

Point2 = Tuple[float, float]


def _shoelace(vertices: np.ndarray) -> float:
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Strictly convex CCW polygon.

    Attributes:
        vertices: (m, 2) CCW vertex loop, m ≥ 3
        area: Shoelace area (> 0)
        normals: (m, 2) inward unit normals of the edges
        offsets: (m,) line offsets, so that normals·x − offsets ≥ 0 inside
    """

    vertices: np.ndarray
    area: float = field(init=False)
    normals: np.ndarray = field(init=False, repr=False)
    offsets: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        verts = np.array(self.vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 2 or len(verts) < 3:
            raise DegenerateInput(f"Polygon needs at least 3 vertices, got shape {verts.shape}")
        area = _shoelace(verts)
        if area < 0.0:
            verts = verts[::-1].copy()
            area = -area
        if not area > 0.0:
            raise DegenerateInput("Polygon has zero area")
        edges = np.roll(verts, -1, axis=0) - verts
        lengths = np.hypot(edges[:, 0], edges[:, 1])
        if np.any(lengths == 0.0):
            raise DegenerateInput("Polygon has repeated consecutive vertices")
        loop = [tuple(v) for v in verts.tolist()]
        m = len(loop)
        for i in range(m):
            if orient2d(loop[i - 1], loop[i], loop[(i + 1) % m]) <= 0.0:
                raise InvalidParams(f"Polygon is not strictly convex at vertex {i}: {loop[i]}")
        # inward normal of a CCW edge (dx, dy) is (−dy, dx)
        normals = np.column_stack([-edges[:, 1], edges[:, 0]]) / lengths[:, None]
        offsets = np.einsum("ij,ij->i", normals, verts)
        for arr in (verts, normals, offsets):
            arr.setflags(write=False)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "area", area)
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "offsets", offsets)

    @property
    def m(self) -> int:
        return int(len(self.vertices))

    @property
    def diameter(self) -> float:
        diffs = self.vertices[:, None, :] - self.vertices[None, :, :]
        return float(np.sqrt((diffs ** 2).sum(axis=2)).max())

    @property
    def edges(self) -> np.ndarray:
        """(m, 2, 2) array of edge segments (start, end)."""
        return np.stack([self.vertices, np.roll(self.vertices, -1, axis=0)], axis=1)

    def line_distances(self, points: ArrayLike) -> np.ndarray:
        """(k, m) signed distances of each point to each edge line (positive inside)."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return pts @ self.normals.T - self.offsets[None, :]

    def signed_distance(self, points: ArrayLike) -> np.ndarray:
        """min over edge lines; equals the boundary distance for inside points, < 0 outside."""
        return self.line_distances(points).min(axis=1)

    def contains(self, points: ArrayLike, tol: float = 0.0) -> np.ndarray:
        """Membership in the closed polygon, up to ``tol`` outside."""
        return self.signed_distance(points) >= -tol

    def same_as(self, other: "ConvexPolygon", tol: float = 1e-12) -> bool:
        """True when both polygons have the same vertex loop (up to rotation of the loop)."""
        if self.m != other.m:
            return False
        start = int(np.argmin(np.abs(other.vertices - self.vertices[0]).sum(axis=1)))
        rolled = np.roll(other.vertices, -start, axis=0)
        return bool(np.allclose(rolled, self.vertices, atol=tol * max(1.0, self.diameter), rtol=0.0))


def convex_hull(points: ArrayLike) -> ConvexPolygon:
    """Convex hull by Andrew's monotone chain with exact orientation tests.

    Collinear boundary points are dropped, so the result is strictly convex
    and its vertices are a subset of the inputs.

    Raises:
        DegenerateInput: Fewer than 3 distinct points, or all points collinear
    """
    pts = np.unique(as_points(points), axis=0)  # sorted lexicographically by (x, y)
    if len(pts) < 3:
        raise DegenerateInput(f"Convex hull needs 3 distinct points, got {len(pts)}")
    coords = [tuple(p) for p in pts.tolist()]

    def half_chain(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and orient2d(chain[-2], chain[-1], p) <= 0.0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half_chain(coords)
    upper = half_chain(reversed(coords))
    loop = lower[:-1] + upper[:-1]
    if len(loop) < 3:
        raise DegenerateInput("All points are collinear")
    return ConvexPolygon(vertices=np.array(loop))


def polygon_area(poly: ConvexPolygon) -> float:
    """Shoelace area of the polygon."""
    return _shoelace(poly.vertices)


def segment_distances(poly: ConvexPolygon, points: ArrayLike) -> np.ndarray:
    """(k,) Euclidean distance from each point to the nearest boundary edge segment."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    starts = poly.vertices
    vecs = np.roll(poly.vertices, -1, axis=0) - starts
    rel = pts[:, None, :] - starts[None, :, :]
    t = np.einsum("kmj,mj->km", rel, vecs) / np.einsum("mj,mj->m", vecs, vecs)[None, :]
    t = np.clip(t, 0.0, 1.0)
    closest = starts[None, :, :] + t[:, :, None] * vecs[None, :, :]
    d = np.sqrt(((pts[:, None, :] - closest) ** 2).sum(axis=2))
    return d.min(axis=1)


def boundary_distances(poly: ConvexPolygon, points: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorized ``boundary_distance``: (distances, inside flags)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    inside = poly.contains(pts)
    return segment_distances(poly, pts), inside


def boundary_distance(poly: ConvexPolygon, p: ArrayLike) -> Tuple[float, bool]:
    """Distance from p to ∂poly and whether p lies in the closed polygon.

    Membership uses the exact orientation predicate against every edge.
    """
    point = tuple(float(v) for v in np.asarray(p, dtype=float).ravel()[:2])
    verts = [tuple(v) for v in poly.vertices.tolist()]
    inside = all(
        orient2d(verts[i], verts[(i + 1) % len(verts)], point) >= 0.0 for i in range(len(verts))
    )
    return float(segment_distances(poly, [point])[0]), inside
