"""PSNR and SSIM for 8-bit RGB images."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .raster import as_rgb, gaussian_kernel, luminance

PEAK = 255.0
SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
K1, K2 = 0.01, 0.03


def _pair(reference, test) -> tuple[np.ndarray, np.ndarray]:
    reference, test = as_rgb(reference), as_rgb(test)
    if reference.shape != test.shape:
        raise ValueError(f"image shapes differ: {reference.shape} vs {test.shape}")
    return reference, test


def psnr(reference: np.ndarray, test: np.ndarray) -> float:
    """``10 log10(255^2 / MSE)`` over all pixels and channels; inf if equal."""
    reference, test = _pair(reference, test)
    diff = reference.astype(np.float64) - test.astype(np.float64)
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / mse)


def ssim(reference: np.ndarray, test: np.ndarray) -> float:
    """Single-scale SSIM on Rec. 601 luminance.

    Gaussian 11x11 window with sigma 1.5, K1=0.01, K2=0.03, dynamic range
    255. Only windows lying fully inside the image are averaged.
    """
    reference, test = _pair(reference, test)
    h, w = reference.shape[:2]
    if h < SSIM_WINDOW or w < SSIM_WINDOW:
        raise ValueError(f"SSIM needs images of at least {SSIM_WINDOW}x{SSIM_WINDOW}")
    x, y = luminance(reference), luminance(test)
    k = gaussian_kernel(SSIM_SIGMA, SSIM_WINDOW)
    pad = SSIM_WINDOW // 2

    def local_mean(a):
        a = ndimage.correlate1d(a, k, axis=0, mode="nearest")
        a = ndimage.correlate1d(a, k, axis=1, mode="nearest")
        return a[pad:h - pad, pad:w - pad]

    mu_x, mu_y = local_mean(x), local_mean(y)
    var_x = local_mean(x * x) - mu_x * mu_x
    var_y = local_mean(y * y) - mu_y * mu_y
    cov = local_mean(x * y) - mu_x * mu_y
    c1, c2 = (K1 * PEAK) ** 2, (K2 * PEAK) ** 2
    num = (2 * mu_x * mu_y + c1) * (2 * cov + c2)
    den = (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
    return float(np.mean(num / den))


@dataclass(frozen=True)
class QualityScore:
    psnr: float
    ssim: float

    def as_dict(self) -> dict:
        return {"psnr": "inf" if math.isinf(self.psnr) else self.psnr, "ssim": self.ssim}

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def quality(reference: np.ndarray, test: np.ndarray) -> QualityScore:
    return QualityScore(psnr(reference, test), ssim(reference, test))
