"""Type contracts for maximal-spacing statistics and convexity tests."""

from src.models.errors import (
    DegenerateInput,
    GeometryError,
    InputError,
    MaxSpacingError,
)
from src.models.parameters import BandwidthSpec, KernelSpec, LimitParams, NoiseSpec
from src.models.sample import Sample
from src.models.shapes import (
    DiskShape,
    PolygonShape,
    RectangleShape,
    ShapeSpec,
    SquareMinusTriangle,
    SShape,
)
from src.models.solution import (
    EcdfReport,
    EmptyBall,
    PowerTable,
    SpacingStatistics,
    TestResult,
)
from src.models.study import StudyConfig

__all__ = [
    "BandwidthSpec",
    "DegenerateInput",
    "DiskShape",
    "EcdfReport",
    "EmptyBall",
    "GeometryError",
    "InputError",
    "KernelSpec",
    "LimitParams",
    "MaxSpacingError",
    "NoiseSpec",
    "PolygonShape",
    "PowerTable",
    "RectangleShape",
    "Sample",
    "ShapeSpec",
    "SpacingStatistics",
    "SquareMinusTriangle",
    "SShape",
    "StudyConfig",
    "TestResult",
]
