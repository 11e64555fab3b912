"""Delaunay triangulation with exact legalization.

Qhull (through ``scipy.spatial.Delaunay``) provides the initial triangulation.
A Lawson flip pass then checks every interior edge with the exact incircle
predicate, flipping edges whose opposite vertex lies strictly inside the
circumcircle. On exact cocircularity the diagonal containing the lowest-index
site of the quadrilateral is kept, which makes the output canonical.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np
from numpy.typing import ArrayLike
from scipy.spatial import Delaunay, QhullError

from src.geometry.predicates import incircle, orient2d
from src.models.errors import DegenerateInput
from src.models.sample import as_points

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def _key(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True, eq=False)
class Triangulation:
    """Delaunay triangulation of a planar site set.

    Attributes:
        points: (n, 2) sites
        triangles: (t, 3) CCW vertex indices
        neighbors: (t, 3) index of the triangle opposite vertex k, −1 on the hull
        edge_triangles: edge (i < j) → indices of the 1 or 2 incident triangles
    """

    points: np.ndarray
    triangles: np.ndarray
    neighbors: np.ndarray = field(init=False, repr=False)
    edge_triangles: Dict[Edge, Tuple[int, ...]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        tris = np.asarray(self.triangles, dtype=np.int64)
        owners: Dict[Edge, List[int]] = {}
        for t, (a, b, c) in enumerate(tris.tolist()):
            for u, v in ((a, b), (b, c), (c, a)):
                owners.setdefault(_key(u, v), []).append(t)
        neighbors = -np.ones_like(tris)
        for t, tri in enumerate(tris.tolist()):
            for k in range(3):
                u, v = tri[(k + 1) % 3], tri[(k + 2) % 3]
                others = [s for s in owners[_key(u, v)] if s != t]
                if others:
                    neighbors[t, k] = others[0]
        object.__setattr__(self, "triangles", tris)
        object.__setattr__(self, "neighbors", neighbors)
        object.__setattr__(self, "edge_triangles", {e: tuple(ts) for e, ts in owners.items()})

    @property
    def edges(self) -> np.ndarray:
        """(e, 2) unique edges, i < j, sorted."""
        return np.array(sorted(self.edge_triangles), dtype=np.int64).reshape(-1, 2)

    @property
    def hull_edges(self) -> List[Edge]:
        return sorted(e for e, ts in self.edge_triangles.items() if len(ts) == 1)

    def circumcenters(self) -> np.ndarray:
        """(t, 2) circumcenters of the triangles."""
        a = self.points[self.triangles[:, 0]]
        b = self.points[self.triangles[:, 1]] - a
        c = self.points[self.triangles[:, 2]] - a
        d = 2.0 * (b[:, 0] * c[:, 1] - b[:, 1] * c[:, 0])
        b2 = (b ** 2).sum(axis=1)
        c2 = (c ** 2).sum(axis=1)
        ux = (c[:, 1] * b2 - b[:, 1] * c2) / d
        uy = (b[:, 0] * c2 - c[:, 0] * b2) / d
        return a + np.column_stack([ux, uy])


def _legalize(points: np.ndarray, triangles: List[List[int]]) -> List[List[int]]:
    """Lawson flips until every interior edge is locally Delaunay (ties → lowest index)."""
    owners: Dict[Edge, List[int]] = {}
    for t, (a, b, c) in enumerate(triangles):
        for u, v in ((a, b), (b, c), (c, a)):
            owners.setdefault(_key(u, v), []).append(t)
    stack = [e for e, ts in owners.items() if len(ts) == 2]
    max_flips = 20 * len(triangles) + 100
    flips = 0
    pts = points.tolist()

    def apex(t: int, u: int, v: int) -> int:
        return next(x for x in triangles[t] if x != u and x != v)

    def directed(t: int, u: int, v: int) -> bool:
        tri = triangles[t]
        i = tri.index(u)
        return tri[(i + 1) % 3] == v

    while stack:
        u, v = stack.pop()
        ts = owners.get(_key(u, v), [])
        if len(ts) != 2:
            continue
        t1, t2 = ts
        # orient so that t1 = (a, b, c) and t2 = (b, a, d), both CCW
        a, b = (u, v) if directed(t1, u, v) else (v, u)
        c, d = apex(t1, a, b), apex(t2, a, b)
        s = incircle(pts[a], pts[b], pts[c], pts[d])
        flip = s > 0.0 or (s == 0.0 and min(c, d) < min(a, b))
        if not flip:
            continue
        # the flip is only valid on a strictly convex quadrilateral a, d, b, c
        if not (orient2d(pts[c], pts[d], pts[b]) > 0.0 and orient2d(pts[d], pts[c], pts[a]) > 0.0):
            continue
        if flips >= max_flips:
            logger.warning(f"Delaunay legalization stopped after {flips} flips")
            break
        flips += 1
        triangles[t1] = [a, d, c]
        triangles[t2] = [d, b, c]
        del owners[_key(a, b)]
        owners[_key(c, d)] = [t1, t2]
        owners[_key(b, c)] = [t2 if t == t1 else t for t in owners[_key(b, c)]]
        owners[_key(a, d)] = [t1 if t == t2 else t for t in owners[_key(a, d)]]
        stack.extend([(a, c), (c, b), (b, d), (d, a)])
    if flips:
        logger.debug(f"Delaunay legalization performed {flips} flips")
    return triangles


def delaunay(points: ArrayLike) -> Triangulation:
    """Delaunay triangulation of distinct, non-collinear sites.

    Raises:
        DegenerateInput: Fewer than 3 distinct sites, all sites collinear, or
            duplicate sites (deduplicate with ``Sample.from_points`` first)
    """
    pts = as_points(points)
    if len(pts) < 3:
        raise DegenerateInput(f"Delaunay triangulation needs 3 sites, got {len(pts)}")
    try:
        qhull = Delaunay(pts, qhull_options="Qbb Qc Qz Q12 Qt")
    except QhullError as exc:
        raise DegenerateInput(f"Sites are collinear or degenerate: {exc}") from exc
    if len(qhull.coplanar):
        raise DegenerateInput(
            f"{len(qhull.coplanar)} site(s) coincide with others; deduplicate before triangulating"
        )
    coords = pts.tolist()
    triangles = []
    for a, b, c in qhull.simplices.tolist():
        o = orient2d(coords[a], coords[b], coords[c])
        if o == 0.0:
            continue  # zero-area sliver from Qhull's merged facets; legalization restores coverage
        triangles.append([a, b, c] if o > 0.0 else [a, c, b])
    if not triangles:
        raise DegenerateInput("All sites are collinear")
    return Triangulation(points=pts, triangles=np.array(_legalize(pts, triangles)))
