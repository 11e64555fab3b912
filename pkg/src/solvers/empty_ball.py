"""Largest empty ball in a convex region minus a finite point set.

Maximizes

    g(x) = min( min_i |x − X_i| , dist(x, ∂S) )

over a convex region S. Every local maximum of g has at least three active
constraints among the sites and the boundary pieces, or two opposite ones,
so candidate centers are enumerated in closed form:

    site/site/site        Voronoi vertices (circumcenters)
    site/site/boundary    points of a Voronoi edge's bisector equidistant from the boundary
    site/boundary/boundary  per site and pair of edge lines (quadratic in the radius)
    boundary only         Chebyshev center of the polygon (linear program), disk center
    site/circle           point opposite the site across the disk center

The best seeds are polished by Nelder-Mead and the winner is certified
against the containment invariant.

For density-weighted spacings the same candidates are enumerated per Voronoi
cell, where the nearest site is fixed and the weight is constant.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike
from scipy.optimize import linprog, minimize
from scipy.spatial import cKDTree

from src.geometry.hull import ConvexPolygon
from src.geometry.regions import ConvexRegion, Disk, PolygonRegion, RegionLike, as_region
from src.geometry.voronoi import VoronoiDiagram, voronoi_cell, voronoi_from_sites
from src.models.errors import CertificationError, EmptyInput, PointOutsideRegion
from src.models.sample import Sample, points_of
from src.models.solution import EmptyBall

logger = logging.getLogger(__name__)

N_SEEDS = 10
MAX_ITER = 200
REL_TOL = 1e-10
CERT_RTOL = 1e-9
_PARALLEL = 1e-12


@dataclass(frozen=True)
class WeightedBall:
    """Maximizer of √(w_i)·g over the Voronoi cells.

    Attributes:
        value: max_i √(w_i) · max_{x ∈ cell_i} g(x)
        ball: Witness ball B(x*, g(x*))
        site: Index of the cell containing x*, -1 when no cell has positive weight
    """

    value: float
    ball: EmptyBall
    site: int


class _Objective:
    """g(x) for a fixed site set and region."""

    def __init__(self, sites: np.ndarray, region: ConvexRegion) -> None:
        self.sites = sites
        self.region = region
        self.tree = cKDTree(sites) if len(sites) else None

    def __call__(self, xs: np.ndarray) -> np.ndarray:
        xs = np.atleast_2d(xs)
        boundary = self.region.signed_distance(xs)
        if self.tree is None:
            return boundary
        nearest, _ = self.tree.query(xs)
        return np.minimum(np.asarray(nearest, dtype=float), boundary)

    def scalar(self, x: np.ndarray) -> float:
        return float(self(np.asarray(x, dtype=float).reshape(1, 2))[0])


# ----------------------------------------------------------------------
# Candidate generators
# ----------------------------------------------------------------------


def chebyshev_center(poly: ConvexPolygon) -> Tuple[np.ndarray, float]:
    """Center and radius of the largest disk inside a convex polygon."""
    # maximize r subject to N·x − r ≥ c
    a_ub = np.column_stack([-poly.normals, np.ones(poly.m)])
    res = linprog(
        c=np.array([0.0, 0.0, -1.0]),
        A_ub=a_ub,
        b_ub=-poly.offsets,
        bounds=[(None, None), (None, None), (0.0, None)],
        method="highs",
    )
    if not res.success:
        # fall back to the vertex centroid, always inside
        center = poly.vertices.mean(axis=0)
        return center, float(poly.signed_distance(center)[0])
    return np.asarray(res.x[:2], dtype=float), float(res.x[2])


def _site_pairs(sites: np.ndarray, diagram: Optional[VoronoiDiagram]) -> np.ndarray:
    """Index pairs of Voronoi neighbours, shape (k, 2)."""
    if diagram is None or len(sites) < 2:
        return np.empty((0, 2), dtype=np.int64)
    return np.array([e.sites for e in diagram.edges], dtype=np.int64).reshape(-1, 2)


def _bisectors(sites: np.ndarray, pairs: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Midpoints, unit bisector directions and half-distances of site pairs."""
    a, b = sites[pairs[:, 0]], sites[pairs[:, 1]]
    mid = 0.5 * (a + b)
    d = b - a
    length = np.hypot(d[:, 0], d[:, 1])
    u = np.column_stack([-d[:, 1], d[:, 0]]) / length[:, None]
    return mid, u, 0.5 * length


def _quadratic_roots(qa: np.ndarray, qb: np.ndarray, qc: np.ndarray) -> np.ndarray:
    """(k, 2) real roots of qa·t² + qb·t + qc = 0, NaN where absent."""
    roots = np.full((len(qa), 2), np.nan)
    linear = np.abs(qa) <= _PARALLEL * np.maximum(1.0, np.abs(qb))
    with np.errstate(divide="ignore", invalid="ignore"):
        lin = linear & (qb != 0.0)
        roots[lin, 0] = -qc[lin] / qb[lin]
        quad = ~linear
        disc = qb[quad] ** 2 - 4.0 * qa[quad] * qc[quad]
        ok = disc >= 0.0
        sq = np.sqrt(np.where(ok, disc, np.nan))
        denom = 2.0 * qa[quad]
        r1 = np.where(ok, (-qb[quad] + sq) / denom, np.nan)
        r2 = np.where(ok, (-qb[quad] - sq) / denom, np.nan)
    roots[quad, 0] = r1
    roots[quad, 1] = r2
    return roots


def _ssl_candidates(
    sites: np.ndarray, pairs: np.ndarray, normals: np.ndarray, offsets: np.ndarray
) -> np.ndarray:
    """Bisector points of site pairs at equal distance from an edge line.

    Args:
        sites: (n, 2) sample points
        pairs: (k, 2) indices of Voronoi neighbours
        normals: (m, 2) inward unit normals of the polygon edges
        offsets: (m,) offsets, a point x is inside when normals·x ≥ offsets

    Returns:
        (c, 2) candidate centers; only roots on the inner side of the line are kept
    """
    if len(pairs) == 0:
        return np.empty((0, 2))
    mid, u, h = _bisectors(sites, pairs)
    out: List[np.ndarray] = []
    for nrm, off in zip(normals, offsets):
        # |x − a|² = h² + t², line distance = α + β·t along x = mid + t·u
        alpha = mid @ nrm - off
        beta = u @ nrm
        roots = _quadratic_roots(1.0 - beta ** 2, -2.0 * alpha * beta, h ** 2 - alpha ** 2)
        for col in range(2):
            t = roots[:, col]
            keep = np.isfinite(t) & (alpha + beta * t >= 0.0)
            out.append(mid[keep] + t[keep, None] * u[keep])
    return np.concatenate(out) if out else np.empty((0, 2))


def _within_lines(xs: np.ndarray, r: np.ndarray, normals: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """Rows of xs whose distance to every edge line is at least r."""
    if len(xs) == 0:
        return xs
    slack = (xs @ normals.T - offsets).min(axis=1) - r
    return xs[slack >= -1e-9 * (1.0 + np.abs(r))]


def _sll_candidates(
    sites: np.ndarray,
    normals: np.ndarray,
    offsets: np.ndarray,
    lower: float,
) -> np.ndarray:
    """Points at distance r from one site and from two edge lines, r ≥ lower.

    Args:
        sites: (n, 2) sample points
        normals: (m, 2) inward unit normals of the polygon edges
        offsets: (m,) edge offsets
        lower: Radius already attained; smaller solutions are dropped

    Returns:
        (c, 2) candidate centers at distance at least r from every edge line
    """
    m = len(normals)
    if len(sites) == 0 or m < 2:
        return np.empty((0, 2))
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    tol = 1e-12 * max(1.0, float(np.abs(sites).max()))
    out: List[np.ndarray] = []
    for i, j in pairs:
        n2 = np.array([normals[i], normals[j]])
        det = n2[0, 0] * n2[1, 1] - n2[0, 1] * n2[1, 0]
        if abs(det) > _PARALLEL:
            x0 = np.linalg.solve(n2, np.array([offsets[i], offsets[j]]))
            w = np.linalg.solve(n2, np.ones(2))
            d = x0 - sites
            roots = _quadratic_roots(
                np.full(len(sites), w @ w - 1.0), 2.0 * d @ w, (d ** 2).sum(axis=1)
            )
            for col in range(2):
                r = roots[:, col]
                keep = np.isfinite(r) & (r >= max(lower, 0.0) - tol)
                out.append(_within_lines(x0 + r[keep, None] * w, r[keep], normals, offsets))
        elif normals[i] @ normals[j] < 0.0:
            # antiparallel: the midline holds every point at distance gap/2 from both
            gap = float(offsets[i] + offsets[j]) * -1.0
            radius = 0.5 * gap
            if radius < lower - tol or radius <= 0.0:
                continue
            p0 = normals[i] * (offsets[i] + radius)
            u = np.array([-normals[i][1], normals[i][0]])
            rel = p0 - sites
            roots = _quadratic_roots(
                np.ones(len(sites)), 2.0 * rel @ u, (rel ** 2).sum(axis=1) - radius ** 2
            )
            for col in range(2):
                t = roots[:, col]
                keep = np.isfinite(t)
                xs = p0 + t[keep, None] * u
                out.append(_within_lines(xs, np.full(len(xs), radius), normals, offsets))
    return np.concatenate(out) if out else np.empty((0, 2))


def _disk_candidates(sites: np.ndarray, pairs: np.ndarray, disk: Disk) -> np.ndarray:
    """Center, site/circle and site/site/circle candidates of a disk region."""
    c = np.asarray(disk.center)
    r = disk.radius
    out = [c.reshape(1, 2)]
    if len(sites):
        rel = sites - c
        a = np.hypot(rel[:, 0], rel[:, 1])
        v = np.where(a[:, None] > 0.0, rel / np.where(a > 0.0, a, 1.0)[:, None], np.array([1.0, 0.0]))
        out.append(c - (0.5 * (r - a))[:, None] * v)
    if len(pairs):
        mid, u, h = _bisectors(sites, pairs)
        q = mid - c
        k = (q * u).sum(axis=1)
        big_a = r ** 2 + h ** 2 - (q ** 2).sum(axis=1)
        # 2r·√(h² + t²) = A − 2k·t, squared
        roots = _quadratic_roots(
            4.0 * r ** 2 - 4.0 * k ** 2, 4.0 * big_a * k, 4.0 * r ** 2 * h ** 2 - big_a ** 2
        )
        for col in range(2):
            t = roots[:, col]
            keep = np.isfinite(t) & (big_a - 2.0 * k * t >= 0.0)
            out.append(mid[keep] + t[keep, None] * u[keep])
    return np.concatenate(out)


def _candidates(sites: np.ndarray, region: ConvexRegion, objective: _Objective) -> np.ndarray:
    """All closed-form candidate centers for ``region``.

    Returns:
        (c, 2) array, possibly with non-finite rows from degenerate roots
    """
    diagram = voronoi_from_sites(sites) if len(sites) else None
    pairs = _site_pairs(sites, diagram)
    base: List[np.ndarray] = []
    if diagram is not None and len(diagram.vertices):
        base.append(diagram.vertices)
    if isinstance(region, Disk):
        base.append(_disk_candidates(sites, pairs, region))
        return np.concatenate(base)
    assert isinstance(region, PolygonRegion)
    poly = region.polygon
    center, _ = chebyshev_center(poly)
    base.append(center.reshape(1, 2))
    base.append(_ssl_candidates(sites, pairs, poly.normals, poly.offsets))
    seeds = np.concatenate(base)
    seeds = seeds[np.all(np.isfinite(seeds), axis=1)]
    # any SLL point of radius below the best seed value cannot win
    lower = float(objective(seeds).max()) if len(seeds) else 0.0
    sll = _sll_candidates(sites, poly.normals, poly.offsets, lower)
    return np.concatenate([seeds, sll])


def _refine(objective: _Objective, x0: np.ndarray, value: float, diam: float) -> Tuple[np.ndarray, float]:
    """Polish a seed with Nelder-Mead; the seed is returned unless strictly improved.

    Args:
        objective: g over the region
        x0: Seed center
        value: g(x0)
        diam: Region diameter, scales the tolerances

    Returns:
        (center, value)
    """
    step = 0.05 * max(value, 1e-6 * diam)
    simplex = np.array([x0, x0 + [step, 0.0], x0 + [0.0, step]])
    res = minimize(
        lambda x: -objective.scalar(x),
        x0,
        method="Nelder-Mead",
        options={
            "maxiter": MAX_ITER,
            "xatol": REL_TOL * diam,
            "fatol": REL_TOL * diam,
            "initial_simplex": simplex,
        },
    )
    polished = -float(res.fun)
    if polished > value:
        return np.asarray(res.x, dtype=float), polished
    return x0, value


def _certify(objective: _Objective, center: np.ndarray, radius: float, diam: float) -> None:
    """Check that B(center, radius) lies in the region and holds no site.

    Raises:
        CertificationError: Ball violates containment beyond CERT_RTOL·diam
    """
    tol = CERT_RTOL * diam
    if not math.isfinite(radius) or radius < 0.0:
        raise CertificationError(f"Empty-ball radius is not a finite non-negative number: {radius}")
    if float(objective.region.signed_distance(center)[0]) < radius - tol:
        raise CertificationError("Empty ball leaves the region")
    if objective.tree is not None:
        nearest, _ = objective.tree.query(center)
        if float(nearest) < radius - tol:
            raise CertificationError("Empty ball contains a sample point")


def _solve(sites: np.ndarray, region: ConvexRegion, refine: bool = True) -> EmptyBall:
    """Best candidate, optionally refined, then certified."""
    objective = _Objective(sites, region)
    cands = _candidates(sites, region, objective)
    cands = cands[np.all(np.isfinite(cands), axis=1)]
    values = objective(cands)
    diam = region.diameter
    order = np.argsort(-values, kind="stable")
    best_x, best_v = cands[order[0]], float(values[order[0]])
    logger.debug(f"Empty ball: {len(cands)} candidates, best seed value {best_v:.6g}")
    if refine:
        for k in order[:N_SEEDS]:
            x, v = _refine(objective, cands[k], float(values[k]), diam)
            if v > best_v:
                best_x, best_v = x, v
    _certify(objective, best_x, best_v, diam)
    return EmptyBall(center=(best_x[0], best_x[1]), radius=best_v)


def largest_empty_ball(
    points: Union[Sample, ArrayLike], region: RegionLike, refine: bool = True
) -> EmptyBall:
    """Largest ball inside ``region`` with no sample point in its interior.

    Raises:
        EmptyInput: No points
        PointOutsideRegion: A point lies outside the closed region
    """
    sites = points_of(points)
    if len(sites) == 0:
        raise EmptyInput("Largest empty ball needs at least one point")
    reg = as_region(region)
    tol = CERT_RTOL * reg.diameter
    outside = ~reg.contains(sites, tol=tol)
    if outside.any():
        row = int(np.flatnonzero(outside)[0])
        raise PointOutsideRegion(
            f"Point {row} {sites[row].tolist()} lies outside the region ({int(outside.sum())} in total)"
        )
    return _solve(sites, reg, refine=refine)


def inscribed_ball(region: RegionLike) -> EmptyBall:
    """Largest ball contained in a convex region."""
    reg = as_region(region)
    if isinstance(reg, Disk):
        return EmptyBall(center=reg.center, radius=reg.radius)
    assert isinstance(reg, PolygonRegion)
    center, radius = chebyshev_center(reg.polygon)
    return EmptyBall(center=(center[0], center[1]), radius=radius)


# ----------------------------------------------------------------------
# Density-weighted maximization over Voronoi cells
# ----------------------------------------------------------------------


def _inside_loop(loop: np.ndarray, pts: np.ndarray, tol: float) -> np.ndarray:
    """Membership of points in a CCW convex loop, up to ``tol`` outside."""
    if len(pts) == 0:
        return np.zeros(0, dtype=bool)
    starts = loop
    edges = np.roll(loop, -1, axis=0) - starts
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    rel = pts[:, None, :] - starts[None, :, :]
    cross = edges[None, :, 0] * rel[:, :, 1] - edges[None, :, 1] * rel[:, :, 0]
    return np.all(cross >= -tol * lengths[None, :], axis=1)


def _edge_candidates(
    loop: np.ndarray, site: np.ndarray, normals: np.ndarray, offsets: np.ndarray
) -> np.ndarray:
    """Points on the cell boundary where two of |x − site|, ℓ_k, ℓ_l cross.

    Args:
        loop: (e, 2) CCW vertices of the Voronoi cell clipped to the hull
        site: Generator of the cell
        normals: (m, 2) inward normals of the relevant hull edges
        offsets: (m,) their offsets

    Returns:
        (c, 2) array: the loop vertices followed by the crossing points
    """
    p = loop
    q = np.roll(loop, -1, axis=0)
    out: List[np.ndarray] = [loop]
    lp = p @ normals.T - offsets  # (e, m)
    lq = q @ normals.T - offsets
    dvec = q - p
    rel = p - site
    for k in range(len(normals)):
        # |p + t(q−p) − s|² = (ℓ(p) + t(ℓ(q) − ℓ(p)))²
        slope = lq[:, k] - lp[:, k]
        qa = (dvec ** 2).sum(axis=1) - slope ** 2
        qb = 2.0 * ((rel * dvec).sum(axis=1) - lp[:, k] * slope)
        qc = (rel ** 2).sum(axis=1) - lp[:, k] ** 2
        roots = _quadratic_roots(qa, qb, qc)
        for col in range(2):
            t = roots[:, col]
            keep = np.isfinite(t) & (t >= 0.0) & (t <= 1.0)
            out.append(p[keep] + t[keep, None] * dvec[keep])
    m = len(normals)
    for k in range(m):
        for l in range(k + 1, m):
            fp = lp[:, k] - lp[:, l]
            fq = lq[:, k] - lq[:, l]
            denom = fp - fq
            with np.errstate(divide="ignore", invalid="ignore"):
                t = np.where(denom != 0.0, fp / denom, np.nan)
            keep = np.isfinite(t) & (t >= 0.0) & (t <= 1.0)
            out.append(p[keep] + t[keep, None] * dvec[keep])
    return np.concatenate(out)


def _relevant_lines(loop: np.ndarray, normals: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """Indices of edge lines that can attain min_k ℓ_k somewhere in the cell."""
    values = loop @ normals.T - offsets  # (v, m)
    ceiling = values.max(axis=0).min()
    return np.flatnonzero(values.min(axis=0) <= ceiling)


def weighted_empty_ball(
    sites: Union[Sample, ArrayLike],
    hull: ConvexPolygon,
    weights: ArrayLike,
    diagram: Optional[VoronoiDiagram] = None,
) -> WeightedBall:
    """Maximize √(w(x))·g(x) over the hull, with w constant on Voronoi cells.

    ``weights[i]`` is the weight of the cell of site i. The nearest site is
    fixed inside a cell, so g reduces to min(|x − X_i|, ℓ_1(x), …, ℓ_m(x)) there.
    Without a positively weighted cell the value is 0, witnessed by a
    zero-radius ball at the Chebyshev center of the hull.

    Raises:
        EmptyInput: No sites
    """
    pts = points_of(sites)
    if len(pts) == 0:
        raise EmptyInput("Weighted empty ball needs at least one site")
    w = np.asarray(weights, dtype=float)
    vd = diagram if diagram is not None else voronoi_from_sites(pts)
    normals, offsets = hull.normals, hull.offsets
    diam = hull.diameter
    tol = 1e-12 * max(1.0, diam)
    center, _ = chebyshev_center(hull)

    cells = []
    for i in range(len(pts)):
        loop = voronoi_cell(vd, i, hull.vertices)
        if len(loop) == 0 or w[i] <= 0.0:
            continue
        far = float(np.hypot(*(loop - pts[i]).T).max())
        ceiling = float((loop @ normals.T - offsets).max(axis=0).min())
        cells.append((math.sqrt(w[i]) * min(far, ceiling), i, loop))
    cells.sort(key=lambda c: -c[0])

    best_value, best_x, best_site = -1.0, center, 0
    for bound, i, loop in cells:
        if bound <= best_value:
            break
        lines = _relevant_lines(loop, normals, offsets)
        nrm, off = normals[lines], offsets[lines]
        cands = [_edge_candidates(loop, pts[i], nrm, off)]
        cands.append(_sll_candidates(pts[i:i + 1], nrm, off, lower=0.0))
        cands.append(center.reshape(1, 2))
        xs = np.concatenate(cands)
        xs = xs[np.all(np.isfinite(xs), axis=1)]
        xs = xs[_inside_loop(loop, xs, tol)]
        if len(xs) == 0:
            continue
        g = np.minimum(np.hypot(*(xs - pts[i]).T), hull.signed_distance(xs))
        k = int(np.argmax(g))
        value = math.sqrt(w[i]) * float(g[k])
        if value > best_value:
            best_value, best_x, best_site = value, xs[k], i
    if best_value < 0.0:
        logger.debug("Weighted empty ball: no cell has positive weight")
        return WeightedBall(value=0.0, ball=EmptyBall(center=(center[0], center[1]), radius=0.0), site=-1)
    radius = max(float(np.hypot(*(best_x - pts[best_site]))), 0.0)
    radius = min(radius, float(hull.signed_distance(best_x)[0]))
    logger.debug(f"Weighted empty ball: value {best_value:.6g} in cell {best_site}")
    return WeightedBall(
        value=max(best_value, 0.0),
        ball=EmptyBall(center=(best_x[0], best_x[1]), radius=max(radius, 0.0)),
        site=best_site,
    )
