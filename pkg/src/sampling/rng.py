"""Seeded random streams.

Stream k of master seed s is PCG64 seeded with SeedSequence(s, spawn_key=(k,)),
so the draws of a replication depend only on (s, k), never on which worker
process runs it.
"""

import os
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from src.models.errors import ConfigError

SEED_ENV = "MAXSPACE_SEED"
DEFAULT_SEED = 42


@dataclass(frozen=True)
class SeededRng:
    """Identifies one reproducible random stream.

    Attributes:
        seed: Master seed (non-negative, up to 64 bits)
        stream: Stream index (grid_index·B + replication in studies)
        algorithm: Bit generator name
    """

    seed: int
    stream: int = 0
    algorithm: str = "PCG64"

    def __post_init__(self) -> None:
        if self.seed < 0 or self.stream < 0:
            raise ConfigError(f"Seed and stream must be non-negative, got ({self.seed}, {self.stream})")

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(seq))


def resolve_seed(seed: Optional[int] = None) -> int:
    """Explicit seed, else $MAXSPACE_SEED, else 42."""
    if seed is not None:
        return int(seed)
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"{SEED_ENV} must be an integer, got '{raw}'") from exc


def as_generator(rng: Union[SeededRng, np.random.Generator, int]) -> np.random.Generator:
    """Accept a stream id, a ready generator or a bare seed."""
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, SeededRng):
        return rng.generator()
    return SeededRng(seed=int(rng)).generator()
