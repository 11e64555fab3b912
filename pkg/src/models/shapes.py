"""Shape specifications for simulated supports.

Each shape is a frozen dataclass validated on construction. ``label`` gives a
stable short name used as a row key in power tables and CSV output.

Supports:
    SquareMinusTriangle: [0,1]² minus the closed isosceles triangle with apex
        (1/2, 1/2), height 1/2 and apex angle φ, base on the edge y = 0
    SShape: S-shaped band of half-width ``noise.bound`` around two circular
        arcs of radius R joined at the origin; R = ∞ is the rectangle limit
    DiskShape, RectangleShape, PolygonShape: convex known supports
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Literal, Tuple, Union

import numpy as np

from src.models.errors import InvalidShape
from src.models.parameters import NoiseSpec


@dataclass(frozen=True)
class SquareMinusTriangle:
    """Unit square with a triangular notch cut from the bottom edge.

    Attributes:
        phi (float): Apex angle φ ∈ (0, π) in radians
    """

    phi: float

    def __post_init__(self) -> None:
        if not (0.0 < self.phi < math.pi):
            raise InvalidShape(f"Apex angle must satisfy 0 < φ < π, got φ={self.phi}")

    @property
    def label(self) -> str:
        return f"square_minus_triangle(phi={self.phi:.6g})"

    @property
    def is_convex(self) -> bool:
        return False

    @property
    def notch_area(self) -> float:
        """Area of the removed triangle clipped to the square."""
        t = math.tan(self.phi / 2.0)
        if t <= 1.0:
            return t / 4.0
        # base wider than the square: full-width band up to y = 1/2 − 1/(2t), then a triangle
        return 0.5 - 1.0 / (4.0 * t)

    @property
    def triangle(self) -> np.ndarray:
        """Vertices of the removed triangle, CCW: base-left, base-right, apex."""
        half_base = 0.5 * math.tan(self.phi / 2.0)
        return np.array([[0.5 - half_base, 0.0], [0.5 + half_base, 0.0], [0.5, 0.5]])

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "square_minus_triangle", "phi": self.phi}


@dataclass(frozen=True)
class SShape:
    """S-shaped band around the curve Γ_R.

    Attributes:
        R (float): Arc radius R ≥ 1, or ``math.inf`` for the rectangle limit
        noise (NoiseSpec): Radial offset law (uniform or truncated normal)
        reflection (str): How the lower arc is obtained from the upper one,
            ``"point"`` ((x, y) ↦ (−x, −y), connected S through the origin) or
            ``"y_axis"`` ((x, y) ↦ (−x, y), the literal mirror reading)
    """

    R: float
    noise: NoiseSpec = field(default_factory=NoiseSpec.uniform)
    reflection: Literal["point", "y_axis"] = "point"

    def __post_init__(self) -> None:
        if not (self.R >= 1.0):
            raise InvalidShape(f"S-shape radius must satisfy R ≥ 1 or R = ∞, got R={self.R}")
        if self.reflection not in ("point", "y_axis"):
            raise InvalidShape(f"Unknown reflection '{self.reflection}'")

    @property
    def label(self) -> str:
        radius = "inf" if math.isinf(self.R) else f"{self.R:.6g}"
        return f"s_shape(R={radius},noise={self.noise.kind})"

    @property
    def is_convex(self) -> bool:
        return math.isinf(self.R)

    @property
    def theta_range(self) -> Tuple[float, float]:
        """Arc parameter interval [3π(R−1)/(2R), 3π/2]."""
        return 3.0 * math.pi * (self.R - 1.0) / (2.0 * self.R), 1.5 * math.pi

    @property
    def rectangle_x_range(self) -> Tuple[float, float]:
        """x-extent of the R = ∞ rectangle (each branch has length 3π/2)."""
        if self.reflection == "point":
            return -1.5 * math.pi, 1.5 * math.pi
        return 0.0, 1.5 * math.pi

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "s_shape",
            "R": "inf" if math.isinf(self.R) else self.R,
            "noise": self.noise.to_dict(),
            "reflection": self.reflection,
        }


@dataclass(frozen=True)
class DiskShape:
    """Disk of given center and radius (default: unit disk at the origin)."""

    radius: float = 1.0
    center: Tuple[float, float] = (0.0, 0.0)

    def __post_init__(self) -> None:
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise InvalidShape(f"Disk radius must be positive and finite, got {self.radius}")

    @property
    def label(self) -> str:
        return f"disk(r={self.radius:.6g})"

    @property
    def is_convex(self) -> bool:
        return True

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "disk", "radius": self.radius, "center": list(self.center)}


@dataclass(frozen=True)
class RectangleShape:
    """Axis-aligned rectangle [x0, x0+w] × [y0, y0+h] (default: unit square)."""

    width: float = 1.0
    height: float = 1.0
    corner: Tuple[float, float] = (0.0, 0.0)

    def __post_init__(self) -> None:
        if not (self.width > 0.0 and self.height > 0.0):
            raise InvalidShape(
                f"Rectangle sides must be positive, got w={self.width}, h={self.height}"
            )

    @property
    def label(self) -> str:
        return f"rectangle(w={self.width:.6g},h={self.height:.6g})"

    @property
    def is_convex(self) -> bool:
        return True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "rectangle",
            "width": self.width,
            "height": self.height,
            "corner": list(self.corner),
        }


@dataclass(frozen=True)
class PolygonShape:
    """Convex polygon given by its vertex loop (any orientation)."""

    vertices: Tuple[Tuple[float, float], ...]

    def __post_init__(self) -> None:
        if len(self.vertices) < 3:
            raise InvalidShape(f"Polygon needs at least 3 vertices, got {len(self.vertices)}")

    @property
    def label(self) -> str:
        return f"polygon(m={len(self.vertices)})"

    @property
    def is_convex(self) -> bool:
        return True

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "polygon", "vertices": [list(v) for v in self.vertices]}


ShapeSpec = Union[SquareMinusTriangle, SShape, DiskShape, RectangleShape, PolygonShape]


def shape_from_dict(data: Dict[str, Any]) -> ShapeSpec:
    """Rebuild a shape from its ``to_dict`` form."""
    kind = data.get("kind")
    if kind == "square_minus_triangle":
        return SquareMinusTriangle(phi=float(data["phi"]))
    if kind == "s_shape":
        radius = math.inf if data["R"] == "inf" else float(data["R"])
        return SShape(
            R=radius,
            noise=NoiseSpec.from_dict(data["noise"]),
            reflection=data.get("reflection", "point"),
        )
    if kind == "disk":
        return DiskShape(radius=float(data["radius"]), center=tuple(data.get("center", (0.0, 0.0))))
    if kind == "rectangle":
        return RectangleShape(
            width=float(data["width"]),
            height=float(data["height"]),
            corner=tuple(data.get("corner", (0.0, 0.0))),
        )
    if kind == "polygon":
        return PolygonShape(vertices=tuple(tuple(v) for v in data["vertices"]))
    raise InvalidShape(f"Unknown shape kind '{kind}'")
