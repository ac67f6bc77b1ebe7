"""Synthetic ribbon (thick scratch) degradation.

Endpoints come from numpy's PCG64 bit generator seeded with the spec's seed,
so a given ``(shape, spec)`` yields the same mask on every platform.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import as_mask, as_rgb, dilate, rasterize_segment

MIN_SIDE = 16
WHITE = np.array([255, 255, 255], dtype=np.uint8)


@dataclass(frozen=True)
class DegradationSpec:
    line_count: int
    width: int = 9
    seed: int = 0

    def __post_init__(self):
        if self.line_count < 0:
            raise ValueError("line_count must be >= 0")
        if self.width < 1 or self.width % 2 == 0:
            raise ValueError(f"width must be a positive odd integer, got {self.width}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")

    @property
    def radius(self) -> int:
        return self.width // 2


def sample_segments(height: int, width: int, spec: DegradationSpec) -> np.ndarray:
    """Draw ``(line_count, 4)`` endpoints ``r0, c0, r1, c1``, uniform over the image."""
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    highs = np.array([height, width, height, width], dtype=np.int64)
    return rng.integers(0, highs, size=(spec.line_count, 4), dtype=np.int64)


def generate_mask(height: int, width: int, spec: DegradationSpec) -> np.ndarray:
    """Union of `spec.line_count` random segments dilated to `spec.width`."""
    if height < MIN_SIDE or width < MIN_SIDE:
        raise ValueError(f"image must be at least {MIN_SIDE}x{MIN_SIDE}, got {height}x{width}")
    skeleton = np.zeros((height, width), dtype=bool)
    for r0, c0, r1, c1 in sample_segments(height, width, spec):
        pts = rasterize_segment((r0, c0), (r1, c1), (height, width))
        skeleton[pts[:, 0], pts[:, 1]] = True
    return dilate(skeleton, spec.radius)


def apply_degradation(image: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Copy of `image` with every masked pixel painted white."""
    image = as_rgb(image)
    mask = as_mask(mask, image.shape[:2])
    out = image.copy()
    out[mask] = WHITE
    return out


def degrade(image: np.ndarray, spec: DegradationSpec) -> tuple[np.ndarray, np.ndarray]:
    """Generate a mask for `image` and apply it; returns ``(degraded, mask)``."""
    image = as_rgb(image)
    mask = generate_mask(image.shape[0], image.shape[1], spec)
    return apply_degradation(image, mask), mask
