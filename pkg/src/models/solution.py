"""Type contracts for computed results: empty balls, spacing statistics, tests, studies.

Every record exposes ``to_dict()`` for JSON export; table-like records also
expose ``to_frame()`` for CSV export.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Literal, Optional

import numpy as np
import pandas as pd

from src.models.parameters import LimitParams


@dataclass(frozen=True)
class EmptyBall:
    """Ball B(center, radius) inside a region and free of sample points.

    Attributes:
        center: (x, y) of the ball center
        radius: Radius ≥ 0, in the units of the coordinates
    """

    center: tuple
    radius: float

    def __post_init__(self) -> None:
        if not (self.radius >= 0.0):
            raise ValueError(f"Empty-ball radius must be non-negative, got {self.radius}")
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))

    def to_dict(self) -> Dict[str, float]:
        return {"cx": self.center[0], "cy": self.center[1], "r": self.radius}


@dataclass(frozen=True)
class SpacingStatistics:
    """Maximal-spacing statistics of one sample.

    Attributes:
        R: Radius of the witness ball (the maximal inner radius for uniform spacings)
        Delta: Maximal spacing Δ (δ̂ for density-weighted spacings)
        V: Δ^d
        U: n·V − log n − (d−1)·log log n − log α
        params: Limit-law parameters used for U
        witness: Ball attaining the spacing
        support_area: Area of the support (or hull) the statistic was computed on
        on_hull: Support is the sample's convex hull; exported as ``hull_area``
    """

    R: float
    Delta: float
    V: float
    U: float
    params: LimitParams
    witness: EmptyBall
    support_area: float
    on_hull: bool = False

    def __post_init__(self) -> None:
        expected = self.Delta ** self.params.d
        if not math.isclose(self.V, expected, rel_tol=1e-12, abs_tol=1e-300):
            raise ValueError(f"V must equal Δ^d, got V={self.V:.17g}, Δ^d={expected:.17g}")

    @property
    def band(self) -> float:
        """(n·V − log n) / log log n."""
        n = self.params.n
        return (n * self.V - math.log(n)) / math.log(math.log(n))

    def to_dict(self) -> Dict[str, Any]:
        area_key = "hull_area" if self.on_hull else "support_area"
        return {
            "n": self.params.n,
            "d": self.params.d,
            "alpha": self.params.alpha,
            "R": self.R,
            "Delta": self.Delta,
            "V": self.V,
            "U": self.U,
            area_key: self.support_area,
            "witness": self.witness.to_dict(),
        }


Method = Literal["semi_parametric", "nonparametric"]

LEVEL_NOTES: Dict[str, str] = {
    "semi_parametric": "asymptotic level gamma for smooth convex supports, <= gamma otherwise",
    "nonparametric": "asymptotic level < gamma",
}


@dataclass(frozen=True)
class TestResult:
    """Outcome of a convexity test.

    Attributes:
        method: ``"semi_parametric"`` or ``"nonparametric"``
        statistic: Ṽ_n (semi-parametric) or V̂_n (nonparametric)
        critical: c_{n,γ}
        u_value: Normalized statistic U
        p_value: 1 − G(U), G the standard Gumbel CDF
        reject: Decision (strict ``>`` for semi-parametric, ``≥`` for nonparametric)
        gamma_level: Test level γ
        witness: Ball attaining the statistic
        hull_area: |𝓗(ℵ_n)|
        R: Witness radius
        n: Sample size after deduplication
        bandwidth: Kernel bandwidth (nonparametric only)
        level_note: Validity of the asymptotic level
        seed: Seed of the generated sample, when known
    """

    __test__ = False  # not a pytest class

    method: Method
    statistic: float
    critical: float
    u_value: float
    p_value: float
    reject: bool
    gamma_level: float
    witness: EmptyBall
    hull_area: float
    R: float
    n: int
    bandwidth: Optional[float] = None
    level_note: str = ""
    seed: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "method": self.method,
            "n": self.n,
            "statistic": self.statistic,
            "critical_value": self.critical,
            "u": self.u_value,
            "p_value": self.p_value,
            "reject": self.reject,
            "gamma": self.gamma_level,
            "hull_area": self.hull_area,
            "R": self.R,
            "bandwidth": self.bandwidth,
            "witness": self.witness.to_dict(),
            "seed": self.seed,
        }


@dataclass(frozen=True)
class PowerTable:
    """Rejection proportions of a Monte Carlo study.

    Attributes:
        rows: DataFrame with columns shape, n, method, rejections, replications,
            proportion, se (se = √(p̂(1−p̂)/B))
        seed: Master seed
        config_hash: SHA-256 of the canonical study configuration
        wall_time: Elapsed seconds
        kind: Study kind (``"power"`` or ``"level"``)
    """

    rows: pd.DataFrame
    seed: int
    config_hash: str
    wall_time: float
    kind: str = "power"

    def proportion(self, shape: str, n: int, method: str) -> float:
        """Rejection proportion of one grid cell."""
        mask = (self.rows["shape"] == shape) & (self.rows["n"] == n) & (self.rows["method"] == method)
        selected = self.rows.loc[mask, "proportion"]
        if selected.empty:
            raise KeyError(f"No cell ({shape}, {n}, {method}) in power table")
        return float(selected.iloc[0])

    def to_frame(self) -> pd.DataFrame:
        return self.rows.copy()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "seed": self.seed,
            "config_hash": self.config_hash,
            "wall_time": self.wall_time,
            "rows": self.rows.to_dict(orient="records"),
        }


@dataclass(frozen=True, eq=False)
class EcdfReport:
    """Empirical law of U over replications against the Gumbel limit.

    Attributes:
        shape: Label of the known support
        n: Sample size
        u_values: Sorted U values, one per replication
        ks_distance: sup_t |F_B(t) − G(t)|
        ks_pvalue: Kolmogorov-Smirnov p-value of the same comparison
        band_values: (n·V − log n) / log log n per replication
        d: Dimension, for the band [d−1, d+1]
        seed: Master seed
        config_hash: SHA-256 of the canonical study configuration
        wall_time: Elapsed seconds
    """

    shape: str
    n: int
    u_values: np.ndarray
    ks_distance: float
    ks_pvalue: float
    band_values: np.ndarray
    d: int = 2
    seed: int = 0
    config_hash: str = ""
    wall_time: float = 0.0
    band_median: float = field(init=False)
    band_fraction: float = field(init=False)

    def __post_init__(self) -> None:
        if not (0.0 <= self.ks_distance <= 1.0):
            raise ValueError(f"KS distance must lie in [0, 1], got {self.ks_distance}")
        object.__setattr__(self, "u_values", np.sort(np.asarray(self.u_values, dtype=float)))
        band = np.asarray(self.band_values, dtype=float)
        object.__setattr__(self, "band_values", band)
        object.__setattr__(self, "band_median", float(np.median(band)))
        inside = (band >= self.d - 1) & (band <= self.d + 1)
        object.__setattr__(self, "band_fraction", float(inside.mean()))

    def to_frame(self) -> pd.DataFrame:
        """Plot-ready ECDF of U next to the Gumbel CDF."""
        from src.inference.constants import gumbel_cdf

        b = len(self.u_values)
        return pd.DataFrame(
            {
                "u": self.u_values,
                "ecdf": np.arange(1, b + 1) / b,
                "gumbel_cdf": gumbel_cdf(self.u_values),
            }
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "shape": self.shape,
            "n": self.n,
            "replications": int(len(self.u_values)),
            "ks_distance": self.ks_distance,
            "ks_pvalue": self.ks_pvalue,
            "band_median": self.band_median,
            "band_fraction_in_range": self.band_fraction,
            "band_range": [self.d - 1, self.d + 1],
            "seed": self.seed,
            "config_hash": self.config_hash,
            "wall_time": self.wall_time,
        }
