"""Raster containers, line rasterization and morphology.

Images are plain numpy arrays: an RGB image is ``(H, W, 3) uint8`` and a
degradation mask is ``(H, W) bool`` with ``True`` marking missing pixels.
Pixel coordinates are ``(row, col)`` throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from os import PathLike

import numpy as np
from PIL import Image
from scipy import ndimage

_EIGHT = np.ones((3, 3), dtype=bool)


# ---------------------------------------------------------------- validation

def as_rgb(image) -> np.ndarray:
    """Return `image` as a contiguous ``(H, W, 3) uint8`` array or raise."""
    arr = np.asarray(image)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"expected an (H, W, 3) RGB array, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("image must be at least 1x1")
    if arr.dtype != np.uint8:
        raise ValueError(f"expected uint8 pixels, got {arr.dtype}")
    return np.ascontiguousarray(arr)


def as_mask(mask, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Return `mask` as an ``(H, W) bool`` array, checking it against `shape`."""
    arr = np.asarray(mask)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D mask, got shape {arr.shape}")
    if shape is not None and arr.shape != tuple(shape):
        raise ValueError(f"mask shape {arr.shape} does not match image shape {tuple(shape)}")
    return arr.astype(bool, copy=False)


# ----------------------------------------------------------------------- I/O

def read_rgb(path: str | PathLike) -> np.ndarray:
    with Image.open(path) as im:
        return np.array(im.convert("RGB"), dtype=np.uint8)


def write_rgb(path: str | PathLike, image: np.ndarray) -> None:
    Image.fromarray(as_rgb(image), mode="RGB").save(path, format="PNG")


def read_mask(path: str | PathLike) -> np.ndarray:
    """Read a grayscale mask; any nonzero byte counts as degraded."""
    with Image.open(path) as im:
        return np.array(im.convert("L")) != 0


def write_mask(path: str | PathLike, mask: np.ndarray) -> None:
    data = as_mask(mask).astype(np.uint8) * 255
    Image.fromarray(data, mode="L").save(path, format="PNG")


# ------------------------------------------------------------- rasterization

def rasterize_segment(p0, p1, shape: tuple[int, int] | None = None) -> np.ndarray:
    """8-connected digital line from `p0` to `p1`, endpoints included.

    Returns an ``(N, 2)`` int array of ``(row, col)`` pairs ordered along the
    line. Endpoints are put in a canonical order first, so the pixel set does
    not depend on which end is given first. Along the major axis each step
    takes the minor coordinate ``round(exact)`` with halves rounded up.

    If `shape` is given, both endpoints must lie inside it.
    """
    (r0, c0), (r1, c1) = (tuple(int(v) for v in p0), tuple(int(v) for v in p1))
    if shape is not None:
        h, w = shape[:2]
        for r, c in ((r0, c0), (r1, c1)):
            if not (0 <= r < h and 0 <= c < w):
                raise ValueError(f"endpoint {(r, c)} outside image of shape {(h, w)}")
    if (r1, c1) < (r0, c0):
        r0, c0, r1, c1 = r1, c1, r0, c0

    dr, dc = r1 - r0, c1 - c0
    n = max(abs(dr), abs(dc))
    if n == 0:
        return np.array([[r0, c0]], dtype=np.int64)
    t = np.arange(n + 1, dtype=np.int64)
    # floor((2*t*d + n) / (2n)) == round-half-up of t*d/n, in exact integers
    if abs(dr) >= abs(dc):
        rows = r0 + np.sign(dr) * t
        cols = c0 + (2 * t * dc + n) // (2 * n)
    else:
        cols = c0 + np.sign(dc) * t
        rows = r0 + (2 * t * dr + n) // (2 * n)
    return np.stack([rows, cols], axis=1)


# ---------------------------------------------------------------- morphology

def disk(radius: int) -> np.ndarray:
    """Boolean footprint of all offsets with Euclidean norm <= `radius`."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    y, x = np.mgrid[-radius:radius + 1, -radius:radius + 1]
    return (x * x + y * y) <= radius * radius


def dilate(mask: np.ndarray, radius: int) -> np.ndarray:
    """Binary dilation by a Euclidean disk, clipped at the image borders."""
    mask = as_mask(mask)
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if radius == 0 or not mask.any():
        return mask.copy()
    return ndimage.binary_dilation(mask, structure=disk(radius))


def square_dilate(mask: np.ndarray, radius: int) -> np.ndarray:
    """Dilation by a ``(2r+1)`` square, i.e. Chebyshev distance <= `radius`.

    Shifted ORs; cheaper than a filter call on the small windows used per
    work item.
    """
    rows = mask.copy()
    for k in range(1, radius + 1):
        rows[k:] |= mask[:-k]
        rows[:-k] |= mask[k:]
    out = rows.copy()
    for k in range(1, radius + 1):
        out[:, k:] |= rows[:, :-k]
        out[:, :-k] |= rows[:, k:]
    return out


@dataclass(frozen=True, eq=False)
class RibbonComponent:
    """One 8-connected region of a degradation mask.

    ``rows``/``cols`` hold the member pixels. ``bbox`` is inclusive
    ``(row_min, row_max, col_min, col_max)``; ``centroid`` is the unweighted
    mean ``(row, col)`` of the members.
    """

    rows: np.ndarray
    cols: np.ndarray
    bbox: tuple[int, int, int, int]
    centroid: tuple[float, float]
    _local: np.ndarray | None = field(default=None, repr=False)

    @classmethod
    def from_pixels(cls, rows, cols) -> "RibbonComponent":
        rows = np.asarray(rows, dtype=np.int64).ravel()
        cols = np.asarray(cols, dtype=np.int64).ravel()
        if rows.size == 0 or rows.shape != cols.shape:
            raise ValueError("a component needs a nonempty, aligned pixel list")
        bbox = (int(rows.min()), int(rows.max()), int(cols.min()), int(cols.max()))
        centroid = (float(rows.mean()), float(cols.mean()))
        return cls(rows, cols, bbox, centroid)

    @property
    def size(self) -> int:
        return int(self.rows.size)

    @property
    def height(self) -> int:
        return self.bbox[1] - self.bbox[0] + 1

    @property
    def width(self) -> int:
        return self.bbox[3] - self.bbox[2] + 1

    @property
    def pixel_set(self) -> set[tuple[int, int]]:
        return set(zip(self.rows.tolist(), self.cols.tolist()))

    @property
    def local_mask(self) -> np.ndarray:
        """Membership mask cropped to the bounding box."""
        if self._local is None:
            local = np.zeros((self.height, self.width), dtype=bool)
            local[self.rows - self.bbox[0], self.cols - self.bbox[2]] = True
            object.__setattr__(self, "_local", local)
        return self._local

    def to_mask(self, shape: tuple[int, int]) -> np.ndarray:
        out = np.zeros(shape[:2], dtype=bool)
        out[self.rows, self.cols] = True
        return out


def connected_components(mask: np.ndarray) -> list[RibbonComponent]:
    """Maximal 8-connected components, sorted by centroid (row, col)."""
    mask = as_mask(mask)
    labels, n = ndimage.label(mask, structure=_EIGHT)
    return _components_from_labels(labels, n)


def _components_from_labels(labels: np.ndarray, n: int) -> list[RibbonComponent]:
    if n == 0:
        return []
    idx = np.flatnonzero(labels)
    labs = labels.ravel()[idx]
    order = np.argsort(labs, kind="stable")
    idx, labs = idx[order], labs[order]
    bounds = np.flatnonzero(np.diff(labs)) + 1
    w = labels.shape[1]
    comps = [RibbonComponent.from_pixels(chunk // w, chunk % w)
             for chunk in np.split(idx, bounds)]
    comps.sort(key=lambda c: c.centroid)
    return comps


def boundary_band(component: RibbonComponent, half_width: int,
                  shape: tuple[int, int]) -> np.ndarray:
    """Pixels within Chebyshev distance `half_width` of the component's seam.

    The band has an inner part (members that have a non-member within
    `half_width`) and an outer part (non-members within `half_width` of a
    member). The image border is not a seam. Returned as ``(N, 2)`` coords.
    """
    if half_width < 1:
        raise ValueError("half_width must be >= 1")
    win, (r0, c0) = _padded_local(component, half_width, shape)
    band = _band_local(win, half_width)
    rr, cc = np.nonzero(band)
    return np.stack([rr + r0, cc + c0], axis=1)


def _padded_local(component: RibbonComponent, pad: int, shape):
    """Component membership in its bbox grown by `pad`, clipped to `shape`."""
    h, w = shape[:2]
    rmin, rmax, cmin, cmax = component.bbox
    r0, r1 = max(rmin - pad, 0), min(rmax + pad, h - 1)
    c0, c1 = max(cmin - pad, 0), min(cmax + pad, w - 1)
    win = np.zeros((r1 - r0 + 1, c1 - c0 + 1), dtype=bool)
    win[rmin - r0:rmax - r0 + 1, cmin - c0:cmax - c0 + 1] = component.local_mask
    return win, (r0, c0)


def _band_local(win: np.ndarray, half_width: int) -> np.ndarray:
    size = 2 * half_width + 1
    grown = ndimage.maximum_filter(win, size=size, mode="constant", cval=0)
    # out-of-image counts as member so clipped edges do not form a seam
    shrunk = ndimage.minimum_filter(win, size=size, mode="constant", cval=1)
    return grown & ~shrunk


# ------------------------------------------------------------------ blurring

def gaussian_kernel(sigma: float, kernel_size: int) -> np.ndarray:
    """Sampled 1-D Gaussian, normalized to sum 1."""
    if kernel_size < 3 or kernel_size % 2 == 0:
        raise ValueError(f"kernel_size must be odd and >= 3, got {kernel_size}")
    if not sigma > 0:
        raise ValueError(f"sigma must be > 0, got {sigma}")
    x = np.arange(kernel_size, dtype=np.float64) - kernel_size // 2
    k = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return k / k.sum()


def blur_float(image: np.ndarray, sigma: float, kernel_size: int) -> np.ndarray:
    """Separable Gaussian blur with edge replication, float64 result."""
    k = gaussian_kernel(sigma, kernel_size)
    out = np.asarray(image, dtype=np.float64)
    out = ndimage.correlate1d(out, k, axis=0, mode="nearest")
    return ndimage.correlate1d(out, k, axis=1, mode="nearest")


def to_uint8(values: np.ndarray) -> np.ndarray:
    """Round half away from zero and clamp to [0, 255]."""
    v = np.asarray(values, dtype=np.float64)
    return np.clip(np.sign(v) * np.floor(np.abs(v) + 0.5), 0, 255).astype(np.uint8)


def gaussian_blur(image: np.ndarray, sigma: float = 1.0, kernel_size: int = 5) -> np.ndarray:
    """Per-channel separable Gaussian blur of an RGB image."""
    image = as_rgb(image)
    return to_uint8(blur_float(image, sigma, kernel_size))


def luminance(image: np.ndarray) -> np.ndarray:
    """Rec. 601 luma ``0.299 R + 0.587 G + 0.114 B`` as float64."""
    img = np.asarray(image, dtype=np.float64)
    return img[..., 0] * 0.299 + img[..., 1] * 0.587 + img[..., 2] * 0.114
