"""Deterministic synthetic test images.

Five 8-bit RGB textures used when no real photographs are supplied: smooth
gradients, periodic patterns and low-pass filtered noise.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np
from scipy import ndimage

from .raster import to_uint8, write_rgb

NAMES = ("gradient", "plaid", "clouds", "terrain", "waves")


def _grid(size):
    y, x = np.mgrid[0:size, 0:size].astype(np.float64)
    return y / size, x / size


def _stack(*channels):
    return to_uint8(np.stack(channels, axis=-1))


def _smooth_noise(rng, size, sigma):
    field = ndimage.gaussian_filter(rng.standard_normal((size, size)), sigma, mode="wrap")
    return field / field.std()


def gradient(size=512, seed=0):
    y, x = _grid(size)
    r = np.hypot(y - 0.45, x - 0.55)
    return _stack(40 + 180 * x, 60 + 150 * y, 200 - 120 * r)


def plaid(size=512, seed=0):
    y, x = _grid(size)
    a = np.sin(2 * np.pi * 5 * x)
    b = np.sin(2 * np.pi * 7 * y + 0.6)
    return _stack(128 + 45 * a + 20 * b, 110 + 25 * a + 45 * b, 140 + 35 * (a * b))


def clouds(size=512, seed=1):
    rng = np.random.default_rng(seed)
    n = _smooth_noise(rng, size, 14)
    m = _smooth_noise(rng, size, 30)
    return _stack(150 + 30 * n, 170 + 25 * n + 10 * m, 210 + 20 * m)


def terrain(size=512, seed=2):
    rng = np.random.default_rng(seed)
    n = (_smooth_noise(rng, size, 40) * 0.6 + _smooth_noise(rng, size, 12) * 0.3
         + _smooth_noise(rng, size, 4) * 0.1)
    return _stack(110 + 40 * n, 100 + 35 * n, 70 + 25 * n)


def waves(size=512, seed=0):
    y, x = _grid(size)
    phase = 2 * np.pi * (6 * x + 0.4 * np.sin(2 * np.pi * 2 * y))
    s = np.sin(phase)
    return _stack(120 + 50 * s, 120 + 30 * s + 30 * y, 90 + 60 * x)


def synthetic_corpus(size: int = 512) -> dict[str, np.ndarray]:
    return {name: globals()[name](size) for name in NAMES}


def write_corpus(directory, size: int = 512) -> list[Path]:
    """Write the corpus as ``<name>.png`` files and return their paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, image in synthetic_corpus(size).items():
        path = directory / f"{name}.png"
        write_rgb(path, image)
        paths.append(path)
    return paths
