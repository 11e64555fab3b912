"""Planar geometry: predicates, convex hulls, Delaunay/Voronoi, convex regions."""

from src.geometry.delaunay import Triangulation, delaunay
from src.geometry.hull import (
    ConvexPolygon,
    boundary_distance,
    convex_hull,
    polygon_area,
)
from src.geometry.predicates import incircle, orient2d
from src.geometry.regions import ConvexRegion, Disk, PolygonRegion, Rectangle, as_region
from src.geometry.voronoi import (
    VoronoiDiagram,
    VoronoiEdge,
    nearest_site,
    voronoi,
    voronoi_cell,
    voronoi_from_sites,
)

__all__ = [
    "ConvexPolygon",
    "ConvexRegion",
    "Disk",
    "PolygonRegion",
    "Rectangle",
    "Triangulation",
    "VoronoiDiagram",
    "VoronoiEdge",
    "as_region",
    "boundary_distance",
    "convex_hull",
    "delaunay",
    "incircle",
    "nearest_site",
    "orient2d",
    "polygon_area",
    "voronoi",
    "voronoi_cell",
    "voronoi_from_sites",
]
