import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.geometry.hull import convex_hull
from src.inference.constants import critical_value, p_value
from src.inference.convexity import test_nonparametric, test_semi_parametric
from src.inference.density import DensityEstimate
from src.models.errors import DegenerateInput, InvalidParams
from src.models.parameters import BandwidthSpec, KernelSpec, LimitParams
from src.models.sample import Sample
from src.models.solution import LEVEL_NOTES

GAMMAS = [0.01, 0.05, 0.1, 0.5]


def _square(n, seed):
    return np.random.default_rng(seed).uniform(size=(n, 2))


def _l_shape(n, seed):
    rng = np.random.default_rng(seed)
    out = np.empty((0, 2))
    while len(out) < n:
        pts = rng.uniform(size=(2 * n, 2))
        keep = ~((pts[:, 0] > 0.5) & (pts[:, 1] > 0.5))
        out = np.vstack([out, pts[keep]])
    return out[:n]


@pytest.mark.parametrize("gamma", GAMMAS)
@pytest.mark.parametrize("seed", range(6))
def test_semi_parametric_rejects_iff_p_below_gamma(gamma, seed):
    result = test_semi_parametric(_square(200, seed), gamma_level=gamma)
    assert result.reject == (result.p_value < gamma)
    assert result.reject == (result.statistic > result.critical)
    assert_allclose(result.critical, critical_value(LimitParams.for_ball(200, gamma_level=gamma)))
    assert_allclose(result.p_value, p_value(result.u_value))


@pytest.mark.parametrize("gamma", GAMMAS)
@pytest.mark.parametrize("seed", range(3))
def test_nonparametric_rejects_iff_p_at_most_gamma(gamma, seed):
    result = test_nonparametric(_square(150, seed), gamma_level=gamma)
    assert result.reject == (result.p_value <= gamma)
    assert result.reject == (result.statistic >= result.critical)
    assert result.bandwidth is not None and result.bandwidth > 0.0


@pytest.mark.parametrize("seed", range(50))
def test_constant_density_gives_the_semi_parametric_statistic(seed):
    pts = _square(120, seed)
    hull = convex_hull(pts)
    flat = DensityEstimate.constant(pts, hull, 1.0 / hull.area)
    np_result = test_nonparametric(pts, density=flat)
    semi = test_semi_parametric(pts)
    assert_allclose(np_result.statistic, semi.statistic, rtol=1e-12)
    assert_allclose(np_result.u_value, semi.u_value, rtol=1e-8, atol=1e-8)
    assert np_result.bandwidth is None


def test_strongly_nonconvex_sample_is_rejected():
    pts = _l_shape(1000, 7)
    assert test_semi_parametric(pts).reject
    assert test_nonparametric(pts).reject
    assert test_nonparametric(pts, k=KernelSpec(kind="uniform"), bw=BandwidthSpec.scaled(2.0)).reject


def test_witness_lies_in_the_notch():
    result = test_semi_parametric(_l_shape(1000, 8))
    cx, cy = result.witness.center
    assert cx > 0.5 and cy > 0.5
    assert 0.1 < result.R < 0.2


def test_result_fields():
    result = test_semi_parametric(_square(100, 0), gamma_level=0.1, seed=123)
    assert result.method == "semi_parametric"
    assert result.level_note == LEVEL_NOTES["semi_parametric"]
    assert result.n == 100
    assert result.seed == 123
    assert result.bandwidth is None
    assert 0.0 < result.hull_area < 1.0
    d = result.to_dict()
    expected = {"method", "n", "statistic", "critical_value", "u", "p_value", "reject", "gamma", "witness"}
    assert set(d) >= expected
    assert set(d["witness"]) == {"cx", "cy", "r"}

    np_result = test_nonparametric(_square(100, 0))
    assert np_result.method == "nonparametric"
    assert np_result.level_note == LEVEL_NOTES["nonparametric"]


def test_duplicates_reduce_n():
    pts = _square(50, 1)
    result = test_semi_parametric(np.vstack([pts, pts[:5]]))
    assert result.n == 50


@pytest.mark.parametrize(
    "points",
    [
        np.array([[0.0, 0.0], [1.0, 1.0]]),
        np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0], [3.0, 3.0]]),
        np.zeros((4, 2)),
    ],
)
@pytest.mark.parametrize("test", [test_semi_parametric, test_nonparametric])
def test_degenerate_samples(points, test):
    with pytest.raises(DegenerateInput):
        test(points)


@pytest.mark.parametrize("gamma", [0.0, 1.0, 2.0])
def test_invalid_level(gamma):
    with pytest.raises(InvalidParams):
        test_semi_parametric(_square(20, 0), gamma_level=gamma)


@pytest.mark.parametrize(
    "scale, theta, shift",
    [(1.0, 0.0, (5.0, -3.0)), (1.0, 1.1, (0.0, 0.0)), (40.0, 0.0, (0.0, 0.0)), (0.02, 2.3, (-7.0, 1.5))],
    ids=["translate", "rotate", "scale", "similarity"],
)
@pytest.mark.parametrize("sampler", [_square, _l_shape], ids=["square", "l_shape"])
def test_semi_parametric_decision_is_similarity_invariant(scale, theta, shift, sampler):
    sample = Sample.from_points(sampler(150, 11))
    base = test_semi_parametric(sample)
    moved = test_semi_parametric(sample.transformed(scale, theta, shift))
    assert moved.reject == base.reject
    assert_allclose(moved.statistic, base.statistic, rtol=1e-9)
    assert_allclose(moved.p_value, base.p_value, rtol=1e-7, atol=1e-12)


@pytest.mark.parametrize(
    "scale, shift",
    [(1.0, (5.0, -3.0)), (40.0, (0.0, 0.0)), (0.02, (-7.0, 1.5))],
    ids=["translate", "scale", "both"],
)
@pytest.mark.parametrize("sampler", [_square, _l_shape], ids=["square", "l_shape"])
def test_nonparametric_decision_is_translation_and_scale_invariant(scale, shift, sampler):
    # the scaled bandwidth averages per-axis spreads, so rotations are excluded
    sample = Sample.from_points(sampler(120, 12))
    base = test_nonparametric(sample)
    moved = test_nonparametric(sample.transformed(scale, 0.0, shift))
    assert moved.reject == base.reject
    assert_allclose(moved.bandwidth, scale * base.bandwidth, rtol=1e-9)
    assert_allclose(moved.statistic, base.statistic, rtol=1e-8)
    assert_allclose(moved.p_value, base.p_value, rtol=1e-6, atol=1e-12)
