"""Type contract for Monte Carlo study configurations, with table presets."""

import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Literal, Tuple

from src.models.errors import ConfigError
from src.models.parameters import BandwidthSpec, KernelSpec, NoiseSpec
from src.models.shapes import (
    DiskShape,
    PolygonShape,
    RectangleShape,
    ShapeSpec,
    SquareMinusTriangle,
    SShape,
    shape_from_dict,
)

MethodTag = Literal["semi", "np"]


@dataclass(frozen=True)
class StudyConfig:
    """Grid of shapes × sample sizes × methods, replicated B times.

    Attributes:
        kind: ``"power"`` (rejection rates), ``"level"`` (rejection rates on convex
            shapes) or ``"limit"`` (law of U on a known support)
        shapes: Shapes of the grid
        n_grid: Sample sizes of the grid
        replications: B ≥ 1
        gamma_level: Test level γ
        methods: ``"semi"`` and/or ``"np"``
        kernel: Kernel of the nonparametric test
        bandwidth: Bandwidth rule of the nonparametric test
        seed: Master seed
        workers: Worker processes (1 = in-process)

    Replication r of grid cell g draws its sample from stream g·B + r of the
    master seed, so results do not depend on ``workers``.
    """

    kind: Literal["power", "level", "limit"]
    shapes: Tuple[ShapeSpec, ...]
    n_grid: Tuple[int, ...]
    replications: int = 100
    gamma_level: float = 0.05
    methods: Tuple[MethodTag, ...] = ("semi",)
    kernel: KernelSpec = field(default_factory=KernelSpec)
    bandwidth: BandwidthSpec = field(default_factory=BandwidthSpec)
    seed: int = 42
    workers: int = 1

    def __post_init__(self) -> None:
        if self.kind not in ("power", "level", "limit"):
            raise ConfigError(f"Study kind must be power, level or limit, got '{self.kind}'")
        if not self.shapes:
            raise ConfigError("Study needs at least one shape")
        if not self.n_grid:
            raise ConfigError("Study needs at least one sample size")
        if any(n < 3 for n in self.n_grid):
            raise ConfigError(f"Sample sizes must satisfy n ≥ 3, got {list(self.n_grid)}")
        if self.replications < 1:
            raise ConfigError(f"Replications must satisfy B ≥ 1, got B={self.replications}")
        if not (0.0 < self.gamma_level < 1.0):
            raise ConfigError(f"Test level must satisfy 0 < γ < 1, got γ={self.gamma_level}")
        if not self.methods or any(m not in ("semi", "np") for m in self.methods):
            raise ConfigError(f"Methods must be a non-empty subset of {{semi, np}}, got {self.methods}")
        if self.workers < 1:
            raise ConfigError(f"Workers must satisfy workers ≥ 1, got {self.workers}")
        if self.seed < 0:
            raise ConfigError(f"Seed must be non-negative, got {self.seed}")
        if self.kind == "level" and not all(s.is_convex for s in self.shapes):
            raise ConfigError("Level studies need convex shapes")
        if self.kind == "limit":
            if not all(isinstance(s, (DiskShape, RectangleShape, PolygonShape)) for s in self.shapes):
                raise ConfigError("Limit studies need a known convex support (disk, rectangle, polygon)")
            if len(self.shapes) != 1 or len(self.n_grid) != 1:
                raise ConfigError("Limit studies run one (shape, n) cell per call")

    @property
    def cells(self) -> Tuple[Tuple[ShapeSpec, int], ...]:
        """Grid cells in canonical order (shape-major)."""
        return tuple((shape, n) for shape in self.shapes for n in self.n_grid)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "shapes": [s.to_dict() for s in self.shapes],
            "n_grid": list(self.n_grid),
            "replications": self.replications,
            "gamma_level": self.gamma_level,
            "methods": list(self.methods),
            "kernel": self.kernel.to_dict(),
            "bandwidth": self.bandwidth.to_dict(),
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "StudyConfig":
        return cls(
            kind=data["kind"],
            shapes=tuple(shape_from_dict(s) for s in data["shapes"]),
            n_grid=tuple(int(n) for n in data["n_grid"]),
            replications=int(data.get("replications", 100)),
            gamma_level=float(data.get("gamma_level", 0.05)),
            methods=tuple(data.get("methods", ("semi",))),
            kernel=KernelSpec(**data.get("kernel", {})),
            bandwidth=BandwidthSpec(**data.get("bandwidth", {})),
            seed=int(data.get("seed", 42)),
            workers=int(data.get("workers", 1)),
        )

    def config_hash(self) -> str:
        """SHA-256 of the canonical JSON form (``workers`` excluded)."""
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    # ------------------------------------------------------------------
    # Presets
    # ------------------------------------------------------------------

    @classmethod
    def table1(
        cls, phi: float = math.pi / 4, replications: int = 1000, seed: int = 42
    ) -> "StudyConfig":
        """Semi-parametric power on [0,1]² minus a triangle of apex angle φ.

        The n grid is the one reported for φ ∈ {π/4, π/6, π/8}; other angles use
        the π/4 grid.
        """
        grids = {
            4: (100, 130, 160, 200, 300),
            6: (200, 250, 300, 400, 500),
            8: (300, 350, 400, 500, 600),
        }
        divisor = round(math.pi / phi)
        n_grid = grids.get(divisor, grids[4]) if math.isclose(math.pi / divisor, phi) else grids[4]
        return cls(
            kind="power",
            shapes=(SquareMinusTriangle(phi=phi),),
            n_grid=n_grid,
            replications=replications,
            methods=("semi",),
            seed=seed,
        )

    @classmethod
    def table2(cls, replications: int = 100, seed: int = 42) -> "StudyConfig":
        """Nonparametric and uniform-assumption power on S-shapes, uniform radial noise."""
        return cls._s_shape_table(NoiseSpec.uniform(), replications, seed)

    @classmethod
    def table3(cls, replications: int = 100, seed: int = 42) -> "StudyConfig":
        """Same grid as ``table2`` with truncated-normal radial noise."""
        return cls._s_shape_table(NoiseSpec.truncated_normal(), replications, seed)

    @classmethod
    def _s_shape_table(cls, noise: NoiseSpec, replications: int, seed: int) -> "StudyConfig":
        radii = (1.0, 1.5, 3.0, 6.0, 12.0, 24.0, math.inf)
        return cls(
            kind="power",
            shapes=tuple(SShape(R=r, noise=noise) for r in radii),
            n_grid=(100, 250, 500, 1000),
            replications=replications,
            methods=("np", "semi"),
            seed=seed,
        )

    @classmethod
    def level_disk(cls, n: int = 1000, replications: int = 1000, seed: int = 42) -> "StudyConfig":
        """Semi-parametric level on the unit disk."""
        return cls(
            kind="level",
            shapes=(DiskShape(),),
            n_grid=(n,),
            replications=replications,
            methods=("semi",),
            seed=seed,
        )

    @classmethod
    def limit_disk(cls, n: int = 2000, replications: int = 1000, seed: int = 42) -> "StudyConfig":
        """Law of U for uniform samples on the unit disk (known support)."""
        return cls(
            kind="limit",
            shapes=(DiskShape(),),
            n_grid=(n,),
            replications=replications,
            seed=seed,
        )
