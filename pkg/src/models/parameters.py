"""Type contracts for limit-law, kernel, bandwidth and noise parameters.

All parameter records are frozen dataclasses validated on construction; a
violated constraint raises a subclass of ``InputError`` whose message names
the inequality.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Literal

from src.models.errors import (
    InvalidBandwidth,
    InvalidDimension,
    InvalidParams,
    InvalidShape,
)


@dataclass(frozen=True)
class LimitParams:
    """Parameters of the Gumbel limit law and of the level-γ test.

    Attributes:
        n (int): Sample size n ≥ 2
        d (int): Dimension d ≥ 1
        alpha (float): Shape constant α_A > 0 (1 for the cube, alpha_ball(d) for the ball)
        gamma_level (float): Test level γ ∈ (0, 1)

    Usage:
        U(ℵ_n) = n·V − log n − (d−1)·log log n − log α
        c_{n,γ} = (−log(−log(1−γ)) + log n + (d−1)·log log n + log α) / n
    """

    n: int
    d: int = 2
    alpha: float = 1.0
    gamma_level: float = 0.05

    def __post_init__(self) -> None:
        if self.d < 1:
            raise InvalidDimension(f"Dimension must satisfy d ≥ 1, got d={self.d}")
        if self.n < 2:
            raise InvalidParams(f"Sample size must satisfy n ≥ 2, got n={self.n}")
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise InvalidParams(f"Shape constant must satisfy α > 0, got α={self.alpha}")
        if not (0.0 < self.gamma_level < 1.0):
            raise InvalidParams(f"Test level must satisfy 0 < γ < 1, got γ={self.gamma_level}")

    @classmethod
    def for_ball(cls, n: int, d: int = 2, gamma_level: float = 0.05) -> "LimitParams":
        """Parameters for spacings measured with balls (α = α_𝓑(d))."""
        from src.inference.constants import alpha_ball

        return cls(n=n, d=d, alpha=alpha_ball(d), gamma_level=gamma_level)

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "d": self.d, "alpha": self.alpha, "gamma_level": self.gamma_level}


@dataclass(frozen=True)
class KernelSpec:
    """Radial kernel of the density estimator (dimension 2).

    Attributes:
        kind (str): ``"gaussian"`` (standard bivariate normal density) or
            ``"uniform"`` (indicator of the unit disk divided by π)

    Both kernels are nonnegative, integrate to 1 and have zero first moment.
    """

    kind: Literal["gaussian", "uniform"] = "gaussian"

    def __post_init__(self) -> None:
        if self.kind not in ("gaussian", "uniform"):
            raise InvalidParams(f"Kernel must be 'gaussian' or 'uniform', got '{self.kind}'")

    @property
    def normalization(self) -> float:
        """Peak value K(0): 1/(2π) for the Gaussian, 1/π for the uniform kernel."""
        return 1.0 / (2.0 * math.pi) if self.kind == "gaussian" else 1.0 / math.pi

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind}


@dataclass(frozen=True)
class BandwidthSpec:
    """Bandwidth rule for the kernel density estimator.

    Attributes:
        rule (str): ``"fixed"`` uses ``value`` as h directly; ``"scaled"`` uses
            h_n = value · σ̂ · n^{−1/(d+4)}, σ̂ the mean coordinatewise standard deviation
        value (float): h for ``fixed``, h0 for ``scaled`` (default h0 = 1.0)
    """

    rule: Literal["fixed", "scaled"] = "scaled"
    value: float = 1.0

    def __post_init__(self) -> None:
        if self.rule not in ("fixed", "scaled"):
            raise InvalidBandwidth(f"Bandwidth rule must be 'fixed' or 'scaled', got '{self.rule}'")
        if not (self.value > 0.0 and math.isfinite(self.value)):
            raise InvalidBandwidth(f"Bandwidth value must be positive, got {self.value}")

    @classmethod
    def fixed(cls, h: float) -> "BandwidthSpec":
        return cls(rule="fixed", value=h)

    @classmethod
    def scaled(cls, h0: float = 1.0) -> "BandwidthSpec":
        return cls(rule="scaled", value=h0)

    def to_dict(self) -> Dict[str, Any]:
        return {"rule": self.rule, "value": self.value}


@dataclass(frozen=True)
class NoiseSpec:
    """Radial offset law for S-shaped supports.

    Attributes:
        kind (str): ``"uniform"`` on [−bound, bound] or ``"truncated_normal"``
            N(0, σ²) conditioned on |u| ≤ bound
        bound (float): Truncation half-width (0.6 in the benchmark sets)
        sigma (float): Normal standard deviation (0.15 in the benchmark sets)
    """

    kind: Literal["uniform", "truncated_normal"] = "uniform"
    bound: float = 0.6
    sigma: float = 0.15

    def __post_init__(self) -> None:
        if self.kind not in ("uniform", "truncated_normal"):
            raise InvalidShape(f"Noise must be 'uniform' or 'truncated_normal', got '{self.kind}'")
        if not (self.bound > 0.0):
            raise InvalidShape(f"Noise bound must be positive, got {self.bound}")
        if not (self.sigma > 0.0):
            raise InvalidShape(f"Noise sigma must be positive, got {self.sigma}")

    @classmethod
    def uniform(cls, bound: float = 0.6) -> "NoiseSpec":
        return cls(kind="uniform", bound=bound)

    @classmethod
    def truncated_normal(cls, sigma: float = 0.15, bound: float = 0.6) -> "NoiseSpec":
        return cls(kind="truncated_normal", bound=bound, sigma=sigma)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "NoiseSpec":
        return cls(
            kind=data.get("kind", "uniform"),
            bound=float(data.get("bound", 0.6)),
            sigma=float(data.get("sigma", 0.15)),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "bound": self.bound, "sigma": self.sigma}
