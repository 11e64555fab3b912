"""Voronoi diagram as the dual of the Delaunay triangulation.

Voronoi vertices are triangle circumcenters. An interior Delaunay edge (i, j)
dualizes to the segment joining the circumcenters of its two triangles; a
hull edge dualizes to a ray from the circumcenter of its only triangle,
pointing away from the triangulation along the bisector of i and j. There is
no point at infinity: every consumer clips rays against a bounded region.

For collinear sites (or fewer than three) the diagram degenerates into
parallel bisector lines between consecutive sites.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional, Set, Tuple

import numpy as np
from numpy.typing import ArrayLike
from scipy.spatial import cKDTree

from src.geometry.delaunay import Triangulation, delaunay
from src.geometry.predicates import orient2d
from src.models.errors import EmptyInput
from src.models.sample import as_points

logger = logging.getLogger(__name__)

# relative tolerance on distances for "x lies in Vor(X_i)"
TIE_RTOL = 1e-9


@dataclass(frozen=True)
class VoronoiEdge:
    """Piece of the bisector of two sites.

    Attributes:
        sites: Generating site pair (i < j)
        kind: ``"segment"`` (origin → end), ``"ray"`` (origin + t·direction, t ≥ 0)
            or ``"line"`` (origin + t·direction, t ∈ ℝ)
        origin: Start point (midpoint of the sites for lines)
        end: End point of a segment, else None
        direction: Unit direction of rays and lines, else None
    """

    sites: Tuple[int, int]
    kind: Literal["segment", "ray", "line"]
    origin: Tuple[float, float]
    end: Optional[Tuple[float, float]] = None
    direction: Optional[Tuple[float, float]] = None


@dataclass(frozen=True, eq=False)
class VoronoiDiagram:
    """Voronoi diagram of a planar site set.

    Attributes:
        sites: (n, 2) generating sites
        vertices: (t, 2) Voronoi vertices (circumcenters), empty when collinear
        vertex_sites: (t, 3) sites equidistant from each vertex
        edges: Bisector pieces, one per Delaunay edge (or consecutive collinear pair)
        cells: site → indices into ``edges`` of the edges bounding its cell
        triangulation: Primal triangulation, None in the collinear fallback
    """

    sites: np.ndarray
    vertices: np.ndarray
    vertex_sites: np.ndarray
    edges: Tuple[VoronoiEdge, ...]
    triangulation: Optional[Triangulation] = None
    cells: Dict[int, Tuple[int, ...]] = field(init=False, repr=False)
    _tree: cKDTree = field(init=False, repr=False)

    def __post_init__(self) -> None:
        cells: Dict[int, List[int]] = {i: [] for i in range(len(self.sites))}
        for k, edge in enumerate(self.edges):
            for s in edge.sites:
                cells[s].append(k)
        object.__setattr__(self, "cells", {i: tuple(ks) for i, ks in cells.items()})
        object.__setattr__(self, "_tree", cKDTree(self.sites))

    @property
    def n(self) -> int:
        return int(len(self.sites))

    def neighbors(self, i: int) -> List[int]:
        """Sites whose cells share an edge with the cell of site i."""
        out = []
        for k in self.cells[i]:
            a, b = self.edges[k].sites
            out.append(b if a == i else a)
        return sorted(out)

    def nearest(self, points: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
        """(distances, indices) of the nearest site for each query point."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        dist, idx = self._tree.query(pts)
        return np.asarray(dist, dtype=float), np.asarray(idx, dtype=np.int64)

    def query(self, points: ArrayLike, k: int = 1) -> Tuple[np.ndarray, np.ndarray]:
        """(distances, indices) of the k nearest sites, each of shape (m, k)."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        k = min(k, self.n)
        dist, idx = self._tree.query(pts, k=k)
        return np.asarray(dist).reshape(len(pts), k), np.asarray(idx).reshape(len(pts), k)

    def tied_sites(self, p: ArrayLike) -> Set[int]:
        point = np.asarray(p, dtype=float).ravel()[:2]
        d0, _ = self._tree.query(point)
        radius = float(d0) * (1.0 + TIE_RTOL)
        return set(int(i) for i in self._tree.query_ball_point(point, r=radius))


def voronoi(tri: Triangulation) -> VoronoiDiagram:
    """Dual Voronoi diagram of a Delaunay triangulation."""
    centers = tri.circumcenters()
    pts = tri.points
    edges: List[VoronoiEdge] = []
    for (i, j), owners in sorted(tri.edge_triangles.items()):
        if len(owners) == 2:
            t1, t2 = owners
            edges.append(
                VoronoiEdge(
                    sites=(i, j),
                    kind="segment",
                    origin=tuple(centers[t1]),
                    end=tuple(centers[t2]),
                )
            )
            continue
        (t,) = owners
        tri_list = tri.triangles[t].tolist()
        k = tri_list.index(i)
        # orient (a, b) along the CCW boundary of the owning triangle
        a, b = (i, j) if tri_list[(k + 1) % 3] == j else (j, i)
        dx, dy = pts[b] - pts[a]
        length = float(np.hypot(dx, dy))
        edges.append(
            VoronoiEdge(
                sites=(i, j),
                kind="ray",
                origin=tuple(centers[t]),
                direction=(float(dy / length), float(-dx / length)),
            )
        )
    return VoronoiDiagram(
        sites=pts,
        vertices=centers,
        vertex_sites=tri.triangles.copy(),
        edges=tuple(edges),
        triangulation=tri,
    )


def _collinear_diagram(pts: np.ndarray) -> VoronoiDiagram:
    edges: List[VoronoiEdge] = []
    if len(pts) >= 2:
        spread = pts - pts[0]
        axis = spread[int(np.argmax((spread ** 2).sum(axis=1)))]
        order = np.argsort(spread @ axis, kind="stable")
        for a, b in zip(order[:-1].tolist(), order[1:].tolist()):
            d = pts[b] - pts[a]
            length = float(np.hypot(d[0], d[1]))
            mid = 0.5 * (pts[a] + pts[b])
            edges.append(
                VoronoiEdge(
                    sites=(min(a, b), max(a, b)),
                    kind="line",
                    origin=(float(mid[0]), float(mid[1])),
                    direction=(float(-d[1] / length), float(d[0] / length)),
                )
            )
    return VoronoiDiagram(
        sites=pts,
        vertices=np.empty((0, 2)),
        vertex_sites=np.empty((0, 3), dtype=np.int64),
        edges=tuple(edges),
    )


def voronoi_from_sites(points: ArrayLike) -> VoronoiDiagram:
    """Voronoi diagram of any non-empty set of distinct sites.

    Raises:
        EmptyInput: No sites
    """
    pts = as_points(points)
    if len(pts) == 0:
        raise EmptyInput("Voronoi diagram needs at least one site")
    coords = pts.tolist()
    collinear = len(pts) < 3 or all(
        orient2d(coords[0], coords[1], c) == 0.0 for c in coords[2:]
    )
    if not collinear:
        return voronoi(delaunay(pts))
    logger.debug(f"{len(pts)} collinear site(s); using parallel bisector lines")
    return _collinear_diagram(pts)


def nearest_site(vd: VoronoiDiagram, p: ArrayLike) -> Set[int]:
    """All sites at minimal distance from p, ties within a relative 1e-9."""
    return vd.tied_sites(p)


def clip_halfplane(polygon: np.ndarray, normal: ArrayLike, offset: float) -> np.ndarray:
    """Part of a convex polygon where normal·x ≥ offset (Sutherland–Hodgman, one plane)."""
    if len(polygon) == 0:
        return polygon
    nrm = np.asarray(normal, dtype=float)
    values = polygon @ nrm - offset
    out: List[np.ndarray] = []
    m = len(polygon)
    for k in range(m):
        p, q = polygon[k], polygon[(k + 1) % m]
        vp, vq = values[k], values[(k + 1) % m]
        if vp >= 0.0:
            out.append(p)
        if (vp >= 0.0) != (vq >= 0.0):
            t = vp / (vp - vq)
            out.append(p + t * (q - p))
    if len(out) < 3:
        return np.empty((0, 2))
    return np.array(out)


def voronoi_cell(vd: VoronoiDiagram, i: int, polygon: np.ndarray) -> np.ndarray:
    """Vor(X_i) ∩ polygon as a CCW vertex loop (empty when they do not meet).

    Clips by the bisector half-planes of the Voronoi neighbours of site i,
    which bound the cell exactly.
    """
    cell = np.asarray(polygon, dtype=float)
    si = vd.sites[i]
    for j in vd.neighbors(i):
        sj = vd.sites[j]
        # |x − s_i|² ≤ |x − s_j|²  ⇔  (s_i − s_j)·x ≥ (|s_i|² − |s_j|²)/2
        cell = clip_halfplane(cell, si - sj, 0.5 * (si @ si - sj @ sj))
        if len(cell) == 0:
            break
    return cell
