import dataclasses
import math

import numpy as np
import pytest

from src.models.errors import (
    ConfigError,
    DegenerateInput,
    GeometryError,
    InputError,
    InputParseError,
    InvalidSample,
    InvalidShape,
)
from src.models.parameters import BandwidthSpec, KernelSpec, NoiseSpec
from src.models.sample import Sample
from src.models.shapes import DiskShape, SShape, SquareMinusTriangle, shape_from_dict
from src.models.study import StudyConfig


def test_error_families_carry_exit_codes():
    assert InputError.exit_code == 2
    assert GeometryError.exit_code == 3
    assert issubclass(DegenerateInput, ValueError)
    assert str(InputParseError("bad row", line=7)).startswith("line 7")


def test_sample_removes_duplicates():
    sample = Sample.from_points([(0, 0), (1, 0), (0, 1), (1, 0)])
    assert sample.n == 3
    assert sample.dedup_count == 1
    assert not sample.points.flags.writeable


def test_sample_rejects_non_finite_points():
    with pytest.raises(InvalidSample):
        Sample.from_points([(0, 0), (np.nan, 1.0)])
    with pytest.raises(InvalidSample):
        Sample.from_points([(0, 0, 0)])


def test_sample_does_not_alias_its_input():
    raw = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    sample = Sample(points=raw)
    raw[0, 0] = 5.0
    assert sample.points[0, 0] == 0.0


@pytest.mark.parametrize("phi", [0.0, math.pi, -1.0])
def test_square_minus_triangle_angle_range(phi):
    with pytest.raises(InvalidShape):
        SquareMinusTriangle(phi=phi)


def test_s_shape_validation_and_theta_range():
    with pytest.raises(InvalidShape):
        SShape(R=0.5)
    assert SShape(R=1.0).theta_range == (0.0, 1.5 * math.pi)
    assert SShape(R=math.inf).is_convex


@pytest.mark.parametrize(
    "shape",
    [
        SquareMinusTriangle(phi=math.pi / 6),
        SShape(R=3.0, noise=NoiseSpec.truncated_normal()),
        SShape(R=math.inf),
        DiskShape(radius=2.0),
    ],
)
def test_shape_dict_round_trip(shape):
    assert shape_from_dict(shape.to_dict()) == shape


def test_specs_validate():
    with pytest.raises(InputError):
        KernelSpec(kind="epanechnikov")
    with pytest.raises(InputError):
        BandwidthSpec.fixed(0.0)
    with pytest.raises(InputError):
        NoiseSpec(kind="uniform", bound=-1.0)


def test_study_config_validation():
    with pytest.raises(ConfigError):
        StudyConfig(kind="power", shapes=(DiskShape(),), n_grid=(100,), replications=0)
    with pytest.raises(ConfigError):
        StudyConfig(kind="level", shapes=(SShape(R=1.5),), n_grid=(100,))
    with pytest.raises(ConfigError):
        StudyConfig(kind="limit", shapes=(SShape(R=math.inf),), n_grid=(100,))
    with pytest.raises(ConfigError):
        StudyConfig(kind="power", shapes=(DiskShape(),), n_grid=(2,))


def test_config_hash_ignores_workers_and_tracks_seed():
    base = StudyConfig.table2(replications=10)
    assert dataclasses.replace(base, workers=4).config_hash() == base.config_hash()
    assert dataclasses.replace(base, seed=7).config_hash() != base.config_hash()


def test_config_dict_round_trip():
    cfg = StudyConfig.table3(replications=20, seed=3)
    again = StudyConfig.from_dict(cfg.to_dict())
    assert again == cfg
    assert again.config_hash() == cfg.config_hash()


def test_presets():
    t1 = StudyConfig.table1(phi=math.pi / 8)
    assert t1.n_grid == (300, 350, 400, 500, 600)
    t2 = StudyConfig.table2()
    assert len(t2.cells) == 7 * 4
    assert t2.methods == ("np", "semi")
    assert math.isinf(t2.shapes[-1].R)
