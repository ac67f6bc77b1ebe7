"""
PSNR and SSIM
=============

A few sanity checks that show how the two metrics behave.
"""

import numpy as np

from ribbons import psnr, ssim
from ribbons.corpus import waves

image = waves(256)

# Identical images: infinite PSNR, SSIM exactly one.
print(psnr(image, image), ssim(image, image))

# A one-level offset everywhere gives MSE 1, i.e. 20 log10(255) dB.
print(f"{psnr(image, np.clip(image.astype(int) + 1, 0, 255).astype(np.uint8)):.2f} dB")

# Noise of growing strength: PSNR falls steadily, SSIM follows.
rng = np.random.default_rng(0)
for sigma in (2, 5, 10, 20):
    noisy = np.clip(image + rng.normal(0, sigma, image.shape), 0, 255).astype(np.uint8)
    print(f"noise {sigma:2d}: PSNR {psnr(image, noisy):5.2f}  SSIM {ssim(image, noisy):.3f}")
