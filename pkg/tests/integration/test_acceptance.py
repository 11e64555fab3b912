"""Long Monte Carlo runs; enabled with ``pytest --runslow``."""

import dataclasses
import math
import os

import numpy as np
import pytest
from scipy.spatial import cKDTree

from src.geometry.hull import convex_hull
from src.geometry.regions import as_region
from src.models.parameters import NoiseSpec
from src.models.shapes import SquareMinusTriangle, SShape
from src.models.study import StudyConfig
from src.solvers.empty_ball import largest_empty_ball
from src.solvers.monte_carlo import run_limit_study, run_power_study

pytestmark = pytest.mark.slow

WORKERS = min(4, os.cpu_count() or 1)


def _run(cfg):
    return run_power_study(dataclasses.replace(cfg, workers=WORKERS), progress=False)


def test_empty_ball_matches_fine_grid():
    rng = np.random.default_rng(2024)
    size = 2000
    for _ in range(100):
        n = int(rng.integers(10, 51))
        pts = rng.uniform(size=(n, 2))
        region = as_region(convex_hull(pts))
        ball = largest_empty_ball(pts, region)
        xmin, ymin, xmax, ymax = region.bounding_box
        xs, ys = np.meshgrid(np.linspace(xmin, xmax, size), np.linspace(ymin, ymax, size))
        grid = np.column_stack([xs.ravel(), ys.ravel()])
        nearest, _ = cKDTree(pts).query(grid)
        best = float(np.minimum(nearest, region.signed_distance(grid)).max())
        diagonal = math.hypot((xmax - xmin) / (size - 1), (ymax - ymin) / (size - 1))
        assert abs(ball.radius - best) <= 2.0 * diagonal + 1e-4 * region.diameter


def test_gumbel_limit_on_disk():
    report = run_limit_study(dataclasses.replace(StudyConfig.limit_disk(), workers=WORKERS), progress=False)
    assert report.ks_distance <= 0.08
    assert 1.0 <= report.band_median <= 3.0


def test_level_on_disk():
    table = _run(StudyConfig.level_disk())
    assert 0.02 <= table.rows.loc[0, "proportion"] <= 0.09


@pytest.mark.parametrize(
    "phi, n, low, high",
    [
        (math.pi / 4, 200, 0.846, 1.0),
        (math.pi / 4, 300, 0.95, 1.0),
        (math.pi / 6, 500, 0.95, 1.0),
        (math.pi / 8, 300, 0.393, 0.693),
    ],
)
def test_square_minus_triangle_power(phi, n, low, high):
    cfg = dataclasses.replace(StudyConfig.table1(phi=phi), n_grid=(n,))
    table = _run(cfg)
    assert low <= table.proportion(SquareMinusTriangle(phi=phi).label, n, "semi") <= high


@pytest.mark.parametrize(
    "noise, R, n, low, high",
    [
        (NoiseSpec.uniform(), 1.5, 250, 0.95, 1.0),
        (NoiseSpec.uniform(), 3.0, 250, 0.95, 1.0),
        (NoiseSpec.uniform(), math.inf, 500, 0.0, 0.10),
        (NoiseSpec.truncated_normal(), 1.0, 100, 0.9, 1.0),
        (NoiseSpec.truncated_normal(), 3.0, 250, 0.9, 1.0),
    ],
)
def test_s_shape_nonparametric_power(noise, R, n, low, high):
    shape = SShape(R=R, noise=noise)
    cfg = StudyConfig(kind="power", shapes=(shape,), n_grid=(n,), replications=100, methods=("np",))
    table = _run(cfg)
    assert low <= table.proportion(shape.label, n, "np") <= high


def test_power_grows_with_n():
    shape = SquareMinusTriangle(phi=math.pi / 4)
    cfg = StudyConfig.table1(phi=math.pi / 4)
    table = _run(cfg)
    rates = [table.proportion(shape.label, n, "semi") for n in cfg.n_grid]
    # Monte Carlo error at B = 1000 is about 0.01
    for before, after in zip(rates, rates[1:]):
        assert after >= before - 0.03
    assert rates[-1] > rates[0]
