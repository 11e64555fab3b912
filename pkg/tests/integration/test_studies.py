import dataclasses
import math

import numpy as np
import pandas as pd
import pytest

from src.models.errors import ConfigError
from src.models.shapes import DiskShape, RectangleShape, SquareMinusTriangle, SShape
from src.models.study import StudyConfig
from src.solvers.monte_carlo import (
    Replication,
    run_limit_replication,
    run_limit_study,
    run_power_study,
    run_test_replication,
)

COLUMNS = ["shape", "n", "method", "rejections", "replications", "proportion", "se", "failures"]


@pytest.fixture
def small_power():
    return StudyConfig(
        kind="power",
        shapes=(SquareMinusTriangle(phi=math.pi / 4), SShape(R=1.5)),
        n_grid=(60, 80),
        replications=4,
        methods=("semi", "np"),
        seed=7,
    )


def test_power_table_layout(small_power):
    table = run_power_study(small_power, progress=False)
    assert list(table.rows.columns) == COLUMNS
    assert len(table.rows) == 2 * 2 * 2
    assert table.kind == "power"
    assert table.seed == 7
    assert table.config_hash == small_power.config_hash()
    assert (table.rows["replications"] == 4).all()
    assert table.rows["proportion"].between(0.0, 1.0).all()
    p = table.rows["proportion"]
    assert np.allclose(table.rows["se"], np.sqrt(p * (1.0 - p) / 4))
    # shape-major, then n, then method
    assert list(table.rows["method"][:2]) == ["semi", "np"]
    assert list(table.rows["n"][:4]) == [60, 60, 80, 80]


def test_power_table_is_reproducible(small_power):
    first = run_power_study(small_power, progress=False)
    second = run_power_study(small_power, progress=False)
    pd.testing.assert_frame_equal(first.rows, second.rows)


def test_worker_count_does_not_change_results(small_power):
    serial = run_power_study(small_power, progress=False)
    parallel = run_power_study(dataclasses.replace(small_power, workers=2), progress=False)
    pd.testing.assert_frame_equal(serial.rows, parallel.rows)
    assert serial.config_hash == parallel.config_hash


def test_replication_is_deterministic():
    rep = Replication(cell=0, shape=SquareMinusTriangle(phi=math.pi / 4), n=60, seed=7, stream=2,
                      methods=("semi", "np"))
    flags = run_test_replication(rep)
    assert set(flags) == {"semi", "np"}
    assert all(v in (0, 1) for v in flags.values())
    assert flags == run_test_replication(rep)


def test_level_study_on_square():
    cfg = StudyConfig(kind="level", shapes=(RectangleShape(),), n_grid=(100,), replications=10, seed=3)
    table = run_power_study(cfg, progress=False)
    assert table.kind == "level"
    assert table.proportion(RectangleShape().label, 100, "semi") == table.rows.loc[0, "proportion"]


def test_power_study_rejects_limit_config():
    with pytest.raises(ConfigError):
        run_power_study(StudyConfig.limit_disk(replications=2), progress=False)


def test_limit_study():
    cfg = StudyConfig.limit_disk(n=200, replications=12, seed=5)
    report = run_limit_study(cfg, progress=False)
    assert len(report.u_values) == 12
    assert np.all(np.diff(report.u_values) >= 0.0)
    assert 0.0 <= report.ks_distance <= 1.0
    assert 0.0 <= report.ks_pvalue <= 1.0
    assert report.n == 200
    assert report.config_hash == cfg.config_hash()
    parallel = run_limit_study(dataclasses.replace(cfg, workers=2), progress=False)
    np.testing.assert_array_equal(parallel.u_values, report.u_values)


def test_limit_replication_on_rectangle():
    rep = Replication(cell=0, shape=RectangleShape(width=2.0, height=0.5), n=150, seed=1, stream=0)
    u, band = run_limit_replication(rep)
    assert math.isfinite(u) and math.isfinite(band)


def test_limit_study_rejects_power_config(small_power):
    with pytest.raises(ConfigError):
        run_limit_study(small_power, progress=False)


def test_limit_config_needs_known_convex_support():
    with pytest.raises(ConfigError):
        StudyConfig(kind="limit", shapes=(SShape(R=1.5),), n_grid=(100,))
    with pytest.raises(ConfigError):
        StudyConfig(kind="limit", shapes=(DiskShape(),), n_grid=(100, 200))
