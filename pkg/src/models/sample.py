"""Type contract for point samples ℵ_n = {X_1, ..., X_n} in the plane."""

from dataclasses import dataclass
from typing import Literal, Union

import numpy as np
from numpy.typing import ArrayLike
from scipy.spatial import cKDTree

from src.models.errors import InvalidSample

# Absolute tolerance on unit-scale data; scaled by the coordinate extent.
DEDUP_TOL = 1e-12


def as_points(points: ArrayLike) -> np.ndarray:
    """Convert to a float (n, 2) array, rejecting other shapes and non-finite values."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidSample(f"Points must form an (n, 2) array, got shape {arr.shape}")
    bad = ~np.isfinite(arr).all(axis=1)
    if bad.any():
        row = int(np.flatnonzero(bad)[0])
        raise InvalidSample(f"Point {row} has a non-finite coordinate: {arr[row].tolist()}")
    return arr


def dedup_points(points: np.ndarray, tol: float = DEDUP_TOL) -> np.ndarray:
    """Indices of the points kept after removing near-duplicates.

    Two points closer than ``tol · max(1, extent)`` are duplicates; the first
    occurrence is kept. Returns sorted indices into ``points``.
    """
    n = len(points)
    if n < 2:
        return np.arange(n)
    extent = float(np.ptp(points, axis=0).max())
    radius = tol * max(1.0, extent)
    pairs = cKDTree(points).query_pairs(r=radius, output_type="ndarray")
    if len(pairs) == 0:
        return np.arange(n)
    keep = np.ones(n, dtype=bool)
    # query_pairs returns i < j; drop the later index of every close pair
    for i, j in sorted(map(tuple, pairs)):
        if keep[i]:
            keep[j] = False
    return np.flatnonzero(keep)


@dataclass(frozen=True, eq=False)
class Sample:
    """Validated planar sample with provenance.

    Attributes:
        points: (n, 2) float array of finite coordinates, duplicates removed
        provenance: ``"generated"`` for simulated data, ``"ingested"`` for user data
        dedup_count: Number of near-duplicate points removed on construction
    """

    points: np.ndarray
    provenance: Literal["generated", "ingested"] = "ingested"
    dedup_count: int = 0

    def __post_init__(self) -> None:
        arr = as_points(self.points).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "points", arr)

    @classmethod
    def from_points(
        cls,
        points: ArrayLike,
        provenance: Literal["generated", "ingested"] = "ingested",
        tol: float = DEDUP_TOL,
    ) -> "Sample":
        """Build a sample, removing near-duplicates and recording how many were dropped."""
        arr = as_points(points)
        keep = dedup_points(arr, tol)
        return cls(points=arr[keep], provenance=provenance, dedup_count=len(arr) - len(keep))

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    def __len__(self) -> int:
        return self.n

    def transformed(self, scale: float, rotation: float, shift: ArrayLike) -> "Sample":
        """Image of the sample under x ↦ scale·Rot(rotation)·x + shift."""
        c, s = np.cos(rotation), np.sin(rotation)
        rot = np.array([[c, -s], [s, c]])
        moved = scale * self.points @ rot.T + np.asarray(shift, dtype=float)
        return Sample(points=moved, provenance=self.provenance, dedup_count=self.dedup_count)


def points_of(data: Union["Sample", ArrayLike]) -> np.ndarray:
    """The (n, 2) coordinates of a ``Sample`` or of a raw point array."""
    if isinstance(data, Sample):
        return data.points
    return as_points(data)
