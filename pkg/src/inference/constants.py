"""Closed-form constants and the Gumbel limit law.

    ω_d = π^{d/2} / Γ(d/2 + 1)
    α_ball(d) = (1/d!) · (√π Γ(d/2+1) / Γ((d+1)/2))^{d−1}
    α_cube(d) = 1
    U = n·V − log n − (d−1)·log log n − log α
    c_{n,γ} = (−log(−log(1−γ)) + log n + (d−1)·log log n + log α) / n

All logarithms are natural. Γ is evaluated through ``scipy.special.gammaln``.
"""

import math
from typing import Union

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import gammaln

from src.models.errors import InvalidDimension, InvalidParams
from src.models.parameters import LimitParams

FloatOrArray = Union[float, np.ndarray]


def _check_dimension(d: int) -> None:
    if int(d) != d or d < 1:
        raise InvalidDimension(f"Dimension must be an integer d ≥ 1, got d={d}")


def _check_n(n: int) -> None:
    if n < 3:
        raise InvalidParams(f"Sample size must satisfy n ≥ 3 (log log n > 0), got n={n}")


def omega(d: int) -> float:
    """Volume of the d-dimensional unit ball."""
    _check_dimension(d)
    return math.exp(0.5 * d * math.log(math.pi) - gammaln(0.5 * d + 1.0))


def alpha_ball(d: int) -> float:
    """Shape constant α of the Euclidean ball."""
    _check_dimension(d)
    log_ratio = 0.5 * math.log(math.pi) + gammaln(0.5 * d + 1.0) - gammaln(0.5 * (d + 1.0))
    return math.exp((d - 1) * log_ratio - gammaln(d + 1.0))


def alpha_cube(d: int) -> float:
    """Shape constant α of the unit cube (exactly 1)."""
    _check_dimension(d)
    return 1.0


def centering(n: int, d: int, alpha: float) -> float:
    """log n + (d−1)·log log n + log α."""
    log_n = math.log(n)
    return log_n + (d - 1) * math.log(log_n) + math.log(alpha)


def critical_value(p: LimitParams) -> float:
    """Critical value c_{n,γ} of the level-γ spacing test."""
    _check_n(p.n)
    return (gumbel_quantile(1.0 - p.gamma_level) + centering(p.n, p.d, p.alpha)) / p.n


def u_statistic(n: int, V: float, d: int = 2, alpha: float = 1.0) -> float:
    """Normalized spacing U = n·V − log n − (d−1)·log log n − log α."""
    _check_n(n)
    _check_dimension(d)
    if not (alpha > 0.0):
        raise InvalidParams(f"Shape constant must satisfy α > 0, got α={alpha}")
    if not (V >= 0.0):
        raise InvalidParams(f"Spacing volume must satisfy V ≥ 0, got V={V}")
    return n * V - centering(n, d, alpha)


def gumbel_cdf(t: ArrayLike) -> FloatOrArray:
    """Standard Gumbel CDF exp(−exp(−t))."""
    out = np.exp(-np.exp(-np.asarray(t, dtype=float)))
    return float(out) if out.ndim == 0 else out


def gumbel_quantile(q: float) -> float:
    """Inverse of ``gumbel_cdf``: −log(−log q)."""
    if not (0.0 < q < 1.0):
        raise InvalidParams(f"Quantile level must satisfy 0 < q < 1, got q={q}")
    return -math.log(-math.log(q))


def p_value(u: float) -> float:
    """Upper-tail Gumbel probability 1 − exp(−exp(−u))."""
    return float(-np.expm1(-np.exp(-u)))


def band_statistic(n: int, V: float) -> float:
    """(n·V − log n) / log log n, almost surely within [d−1, d+1] eventually."""
    _check_n(n)
    return (n * V - math.log(n)) / math.log(math.log(n))
