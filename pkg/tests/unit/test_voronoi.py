import numpy as np
from numpy.testing import assert_allclose

from src.geometry.delaunay import delaunay
from src.geometry.voronoi import (
    clip_halfplane,
    nearest_site,
    voronoi,
    voronoi_cell,
    voronoi_from_sites,
)

SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


def test_triangle_gives_one_vertex_and_three_rays():
    vd = voronoi(delaunay([(0, 0), (2, 0), (1, 2)]))
    assert len(vd.vertices) == 1
    assert [e.kind for e in vd.edges].count("ray") == 3
    center = vd.vertices[0]
    d = np.hypot(*(vd.sites - center).T)
    assert_allclose(d, d[0], rtol=1e-12)


def test_rays_point_away_from_the_sites():
    vd = voronoi(delaunay([(0, 0), (2, 0), (1, 2)]))
    centroid = vd.sites.mean(axis=0)
    for edge in vd.edges:
        i, j = edge.sites
        mid = 0.5 * (vd.sites[i] + vd.sites[j])
        # rays leave the triangulation
        far = np.asarray(edge.origin) + 10.0 * np.asarray(edge.direction)
        assert np.hypot(*(far - centroid)) > np.hypot(*(mid - centroid))


def test_square_corners_share_a_vertex_at_the_center():
    vd = voronoi(delaunay(SQUARE))
    assert_allclose(vd.vertices, [[0.5, 0.5], [0.5, 0.5]], atol=1e-15)


def test_vertices_are_equidistant_and_nearest():
    sites = np.random.default_rng(4).uniform(size=(30, 2))
    vd = voronoi(delaunay(sites))
    for v, trio in zip(vd.vertices, vd.vertex_sites):
        d = np.hypot(*(sites - v).T)
        assert_allclose(d[trio], d[trio[0]], rtol=1e-9)
        others = np.delete(d, trio)
        assert np.all(others >= d[trio[0]] * (1.0 - 1e-9))


def test_nearest_site_examples():
    vd = voronoi_from_sites([(0.0, 0.0), (1.0, 0.0)])
    assert nearest_site(vd, (0.2, 0.0)) == {0}
    assert nearest_site(vd, (0.5, 3.0)) == {0, 1}


def test_nearest_site_matches_linear_scan():
    rng = np.random.default_rng(8)
    sites = rng.uniform(size=(30, 2))
    vd = voronoi_from_sites(sites)
    for q in rng.uniform(size=(100, 2)):
        expected = int(np.argmin(np.hypot(*(sites - q).T)))
        assert expected in nearest_site(vd, q)


def test_collinear_sites_use_bisector_lines():
    vd = voronoi_from_sites([(0.0, 0.0), (2.0, 0.0), (1.0, 0.0)])
    assert len(vd.vertices) == 0
    assert sorted(e.sites for e in vd.edges) == [(0, 2), (1, 2)]
    assert all(e.kind == "line" for e in vd.edges)


def test_clip_halfplane_keeps_the_positive_side():
    half = clip_halfplane(SQUARE, (1.0, 0.0), 0.5)
    assert_allclose(half[:, 0].min(), 0.5)
    assert_allclose(half[:, 0].max(), 1.0)
    assert len(clip_halfplane(SQUARE, (1.0, 0.0), 2.0)) == 0


def test_cells_tile_the_polygon():
    rng = np.random.default_rng(12)
    sites = rng.uniform(0.1, 0.9, size=(25, 2))
    vd = voronoi_from_sites(sites)
    total = 0.0
    for i in range(len(sites)):
        cell = voronoi_cell(vd, i, SQUARE)
        x, y = cell[:, 0], cell[:, 1]
        total += 0.5 * (np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))
        # every cell vertex is at least as close to its own site as to any other
        d = np.hypot(*(cell[:, None, :] - sites[None, :, :]).transpose(2, 0, 1))
        assert np.all(d[:, i] <= d.min(axis=1) + 1e-9)
    assert_allclose(total, 1.0, rtol=1e-10)
