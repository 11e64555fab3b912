import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from src.geometry.hull import ConvexPolygon, convex_hull
from src.geometry.regions import Rectangle
from src.geometry.voronoi import voronoi_from_sites
from src.inference.constants import omega, u_statistic
from src.inference.density import DensityEstimate
from src.inference.spacing import (
    inner_radius,
    known_support_spacing,
    semi_parametric_statistic,
    uniform_spacing,
    weighted_spacing,
)
from src.models.errors import DensityDomainMismatch, InvalidParams
from src.models.parameters import LimitParams
from src.models.sample import Sample
from src.models.shapes import DiskShape
from src.solvers.empty_ball import weighted_empty_ball

CORNERS = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


def test_uniform_spacing_on_square_corners():
    stats = uniform_spacing(CORNERS, Rectangle.from_corner(), LimitParams.for_ball(4))
    assert_allclose(stats.R, 0.5, atol=1e-12)
    assert_allclose(stats.V, math.pi / 4.0, rtol=1e-12)
    assert_allclose(stats.Delta ** 2, stats.V, rtol=1e-12)
    assert_allclose(stats.U, u_statistic(4, stats.V, 2, stats.params.alpha), rtol=1e-12)


def test_uniform_spacing_is_scale_invariant():
    stats = uniform_spacing(10.0 * CORNERS, Rectangle.from_corner(width=10.0, height=10.0))
    assert_allclose(stats.R, 5.0, atol=1e-10)
    assert_allclose(stats.V, math.pi / 4.0, rtol=1e-12)


def test_params_must_match_the_sample():
    with pytest.raises(InvalidParams):
        uniform_spacing(CORNERS, Rectangle.from_corner(), LimitParams.for_ball(10))


def test_semi_parametric_statistic_uses_the_hull():
    stats = semi_parametric_statistic(CORNERS)
    assert_allclose(stats.support_area, 1.0)
    assert stats.on_hull and stats.to_dict()["hull_area"] == stats.support_area
    assert_allclose(stats.V, math.pi / 4.0, rtol=1e-12)


def test_duplicated_point_is_ignored():
    pts = np.random.default_rng(0).uniform(size=(40, 2))
    with_duplicate = np.vstack([pts, pts[7]])
    assert semi_parametric_statistic(with_duplicate).to_dict() == semi_parametric_statistic(pts).to_dict()


def test_known_support_on_disk():
    rng = np.random.default_rng(1)
    r = np.sqrt(rng.uniform(size=500))
    t = rng.uniform(0.0, 2.0 * math.pi, size=500)
    pts = np.column_stack([r * np.cos(t), r * np.sin(t)])
    stats = known_support_spacing(pts, DiskShape())
    assert_allclose(stats.support_area, math.pi)
    assert not stats.on_hull and "support_area" in stats.to_dict()
    assert_allclose(stats.V, stats.R ** 2, rtol=1e-12)  # ω_2 R² / π


def test_inner_radius():
    assert_allclose(inner_radius(Rectangle.from_corner(width=4.0, height=2.0)), 1.0, atol=1e-7)
    assert inner_radius(DiskShape(radius=2.5)) == 2.5


@settings(max_examples=20, deadline=None)
@given(
    st.integers(0, 2**31 - 1),
    st.floats(0.0, 2.0 * math.pi),
    st.floats(0.01, 100.0),
    st.tuples(st.floats(-10.0, 10.0), st.floats(-10.0, 10.0)),
)
def test_semi_parametric_statistic_is_similarity_invariant(seed, theta, scale, shift):
    sample = Sample.from_points(np.random.default_rng(seed).uniform(size=(60, 2)))
    base = semi_parametric_statistic(sample).V
    moved = semi_parametric_statistic(sample.transformed(scale, theta, shift)).V
    assert_allclose(moved, base, rtol=1e-9)


@pytest.mark.parametrize("seed", range(8))
def test_interior_point_never_increases_the_radius(seed):
    rng = np.random.default_rng(seed)
    pts = rng.uniform(size=(30, 2))
    before = semi_parametric_statistic(pts)
    extra = np.vstack([pts, [before.witness.center]])
    after = semi_parametric_statistic(extra)
    assert after.R <= before.R + 1e-9


@pytest.mark.parametrize("eps", [1e-3, 1e-2])
@pytest.mark.parametrize("seed", range(5))
def test_radius_is_stable_under_perturbation(eps, seed):
    rng = np.random.default_rng(seed)
    pts = rng.uniform(size=(40, 2))
    angle = rng.uniform(0.0, 2.0 * math.pi, size=40)
    length = eps * rng.uniform(size=40)
    moved = pts + np.column_stack([length * np.cos(angle), length * np.sin(angle)])
    R0 = semi_parametric_statistic(pts).R
    R1 = semi_parametric_statistic(moved).R
    assert abs(R1 - R0) <= 2.0 * eps + 1e-4 * math.sqrt(2.0)


@pytest.mark.parametrize("seed", range(50))
def test_constant_density_reduces_to_the_semi_parametric_statistic(seed):
    pts = np.random.default_rng(seed).uniform(size=(50, 2))
    hull = convex_hull(pts)
    dens = DensityEstimate.constant(pts, hull, 1.0 / hull.area)
    weighted = weighted_spacing(pts, hull, dens)
    semi = semi_parametric_statistic(pts)
    assert_allclose(weighted.V, semi.V, rtol=1e-12)


def test_doubling_the_density_doubles_the_volume():
    pts = np.random.default_rng(3).uniform(size=(40, 2))
    hull = convex_hull(pts)
    values = np.random.default_rng(4).uniform(0.5, 2.0, size=40)
    diagram = voronoi_from_sites(pts)
    one = DensityEstimate(sites=pts, cell_values=values, hull=hull, diagram=diagram)
    two = DensityEstimate(sites=pts, cell_values=2.0 * values, hull=hull, diagram=diagram)
    v1 = weighted_spacing(pts, hull, one).V
    v2 = weighted_spacing(pts, hull, two).V
    assert_allclose(v2, 2.0 * v1, rtol=1e-12)


def test_two_cell_weighted_maximum_matches_grid():
    sites = np.array([[0.0, 0.0], [1.0, 0.0]])
    hull = ConvexPolygon(vertices=np.array([[-0.5, -1.0], [1.5, -1.0], [1.5, 1.0], [-0.5, 1.0]]))
    weights = omega(2) * np.array([1.0, 4.0])
    best = weighted_empty_ball(sites, hull, weights)

    size = 801
    xs, ys = np.meshgrid(np.linspace(-0.5, 1.5, size), np.linspace(-1.0, 1.0, size))
    grid = np.column_stack([xs.ravel(), ys.ravel()])
    d = np.hypot(*(grid[:, None, :] - sites[None, :, :]).transpose(2, 0, 1))
    cell = np.argmin(d, axis=1)
    g = np.minimum(d.min(axis=1), hull.signed_distance(grid))
    oracle = float((np.sqrt(weights[cell]) * g).max())
    diagonal = math.hypot(2.0 / (size - 1), 2.0 / (size - 1))
    assert abs(best.value - oracle) <= 2.0 * diagonal * math.sqrt(weights.max())
    assert best.value >= oracle - 1e-12
    assert best.site == 1


def test_zero_weights_give_a_zero_radius_witness():
    pts = np.random.default_rng(9).uniform(size=(20, 2))
    hull = convex_hull(pts)
    best = weighted_empty_ball(pts, hull, np.zeros(20))
    assert best.value == 0.0
    assert best.ball.radius == 0.0
    assert best.site == -1
    assert hull.contains(np.array([best.ball.center]))[0]


def test_density_must_cover_the_hull():
    pts = np.random.default_rng(5).uniform(size=(30, 2))
    small = convex_hull(pts[:10])
    dens = DensityEstimate.constant(pts, small, 1.0)
    with pytest.raises(DensityDomainMismatch):
        weighted_spacing(pts, convex_hull(pts), dens)
