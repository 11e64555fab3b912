"""Seeded generators for the benchmark supports."""

from src.sampling.generators import (
    draw_sample,
    membership,
    sample_region,
    sample_s_shape,
    sample_square_minus_triangle,
    truncated_normal,
)
from src.sampling.rng import SeededRng, resolve_seed

__all__ = [
    "SeededRng",
    "draw_sample",
    "membership",
    "resolve_seed",
    "sample_region",
    "sample_s_shape",
    "sample_square_minus_triangle",
    "truncated_normal",
]
