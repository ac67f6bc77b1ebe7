"""Ribbon inpainting by four-direction substitution.

Each degraded region is replaced wholesale by a rigidly translated copy of
known pixels taken from directly above, below, left or right of it. The copy
is chosen by the product cost ``delta_mu * delta_sigma * d``: the mismatch in
mean and in spread of luminance between the candidate and the known ring
around the hole, times the translation distance. After all regions are filled
a thin band straddling every seam is Gaussian smoothed; region interiors keep
their copied texture.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .raster import (
    RibbonComponent,
    _band_local,
    _components_from_labels,
    _padded_local,
    _EIGHT,
    as_mask,
    as_rgb,
    blur_float,
    disk,
    gaussian_kernel,
    square_dilate,
    to_uint8,
)

DIRECTIONS = ("up", "down", "left", "right")
_PRIORITY = {d: i for i, d in enumerate(DIRECTIONS)}
_STEP = {"up": (-1, 0), "down": (1, 0), "left": (0, -1), "right": (0, 1)}
_NO_KNOWN_COLOR = np.array([128, 128, 128], dtype=np.uint8)


class EmptyRingError(ValueError):
    """A region has no known pixels around it to take statistics from."""


@dataclass(frozen=True)
class InpaintConfig:
    """Tuning knobs.

    ``piece_size`` bounds the bounding-box extent of a work item. Regions
    larger than that (typically several crossing ribbons merged into one
    component) are cut along a ``piece_size`` grid so their candidates stay
    close by. ``None`` processes whole connected components.
    """

    gap: int = 1
    smoothing: bool = True
    sigma: float = 1.0
    kernel_size: int = 5
    band_half_width: int = 1
    ring_width: int = 2
    fallback_max_steps: int = 8
    piece_size: int | None = 16

    def __post_init__(self):
        if self.gap < 1:
            raise ValueError("gap must be >= 1")
        if self.band_half_width < 1:
            raise ValueError("band_half_width must be >= 1")
        if self.ring_width < 1:
            raise ValueError("ring_width must be >= 1")
        if self.fallback_max_steps < 0:
            raise ValueError("fallback_max_steps must be >= 0")
        if self.piece_size is not None and self.piece_size < 1:
            raise ValueError("piece_size must be >= 1 or None")
        gaussian_kernel(self.sigma, self.kernel_size)  # validates both


@dataclass(frozen=True, eq=False)
class CandidatePlacement:
    direction: str
    translation: tuple[int, int]
    rows: np.ndarray
    cols: np.ndarray

    @property
    def pixel_set(self) -> set[tuple[int, int]]:
        return set(zip(self.rows.tolist(), self.cols.tolist()))


@dataclass(frozen=True)
class CostBreakdown:
    delta_mu: float
    delta_sigma: float
    d: float
    f_cost: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "f_cost", self.delta_mu * self.delta_sigma * self.d)


@dataclass(frozen=True)
class ComponentReport:
    index: int
    pixel_count: int
    direction: str | None
    cost: CostBreakdown | None

    @property
    def fallback(self) -> bool:
        return self.direction is None

    def as_dict(self) -> dict:
        cost = self.cost
        return {
            "component_index": self.index,
            "pixel_count": self.pixel_count,
            "direction": self.direction or "fallback",
            "delta_mu": cost.delta_mu if cost else None,
            "delta_sigma": cost.delta_sigma if cost else None,
            "d": cost.d if cost else None,
            "f_cost": cost.f_cost if cost else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


# ------------------------------------------------------------ work items

def split_components(mask: np.ndarray, piece_size: int | None = 16) -> list[RibbonComponent]:
    """Connected components, with oversized ones cut along a grid.

    A component whose bounding box is at most `piece_size` on both sides is
    kept whole. Larger ones are split into the 8-connected pieces they form
    inside each ``piece_size`` square grid cell. Sorted by centroid.
    """
    return _components_from_labels(*_piece_labels(as_mask(mask), piece_size))


def _piece_labels(mask: np.ndarray, piece_size: int | None) -> tuple[np.ndarray, int]:
    labels, n = ndimage.label(mask, structure=_EIGHT)
    if n == 0 or piece_size is None:
        return labels, n
    large = [i + 1 for i, sl in enumerate(ndimage.find_objects(labels))
             if sl[0].stop - sl[0].start > piece_size or sl[1].stop - sl[1].start > piece_size]
    if not large:
        return labels, n
    big = np.isin(labels, large)
    pieces, m = _grid_label(big, piece_size)
    return np.where(big, pieces + n, labels), n + m


def _grid_label(mask: np.ndarray, cell: int) -> tuple[np.ndarray, int]:
    # blank separator lines between cells stop 8-connectivity across them
    h, w = mask.shape
    rcuts = np.arange(cell, h, cell)
    ccuts = np.arange(cell, w, cell)
    spread = np.insert(np.insert(mask, rcuts, False, axis=0), ccuts, False, axis=1)
    labels, m = ndimage.label(spread, structure=_EIGHT)
    keep_r = np.ones(spread.shape[0], dtype=bool)
    keep_r[rcuts + np.arange(rcuts.size)] = False
    keep_c = np.ones(spread.shape[1], dtype=bool)
    keep_c[ccuts + np.arange(ccuts.size)] = False
    return labels[keep_r][:, keep_c], m


# ------------------------------------------------------------ statistics

def _coords(pixels) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(pixels, tuple) and len(pixels) == 2 and isinstance(pixels[0], np.ndarray):
        return pixels
    arr = np.asarray(list(pixels) if isinstance(pixels, (set, frozenset)) else pixels,
                     dtype=np.int64).reshape(-1, 2)
    return arr[:, 0], arr[:, 1]


def neighbor_ring(component: RibbonComponent, mask: np.ndarray,
                  ring_width: int = 2) -> np.ndarray:
    """Known pixels within Chebyshev distance `ring_width` of the component.

    Every mask-true pixel is excluded, not only the component's own. Returns
    ``(N, 2)`` coordinates; raises `EmptyRingError` if nothing is left.
    """
    if ring_width < 1:
        raise ValueError("ring_width must be >= 1")
    win, (r0, c0) = _padded_local(component, ring_width, mask.shape)
    grown = square_dilate(win, ring_width)
    grown &= ~mask[r0:r0 + win.shape[0], c0:c0 + win.shape[1]]
    rr, cc = np.nonzero(grown)
    if rr.size == 0:
        raise EmptyRingError("no known pixels around component")
    return np.stack([rr + r0, cc + c0], axis=1)


def luma_milli(image: np.ndarray) -> np.ndarray:
    """Exact ``1000 * luminance`` as int64: ``299 R + 587 G + 114 B``."""
    img = np.asarray(image, dtype=np.int64)
    return img[..., 0] * 299 + img[..., 1] * 587 + img[..., 2] * 114


def region_stats(image: np.ndarray, pixels) -> tuple[float, float]:
    """Mean and population standard deviation of luminance over `pixels`.

    `image` is RGB, or a 2-D plane already converted with `luma_milli`.
    Sums are taken in exact integers and rounded once, so regions with equal
    statistics give bit-identical results (a constant region has spread 0.0).
    """
    rows, cols = _coords(pixels)
    n = int(rows.size)
    if n == 0:
        raise ValueError("region_stats needs at least one pixel")
    vals = image[rows, cols]
    if vals.ndim == 2:
        vals = luma_milli(vals)
    total = int(vals.sum())
    squares = int(vals @ vals)
    scale = 1000 * n
    return total / scale, math.sqrt(n * squares - total * total) / scale


# ------------------------------------------------------------ candidates

def candidate_placements(component: RibbonComponent, mask: np.ndarray,
                         config: InpaintConfig = InpaintConfig()) -> list[CandidatePlacement]:
    """Up to four translated copies of `component` lying on known pixels.

    The first try in each direction sits one bounding-box extent plus
    ``config.gap`` away. A try that touches any mask-true pixel is pushed
    one further extent out, at most ``config.fallback_max_steps`` times.
    Out-of-bounds ends the direction. Output order is up, down, left, right.
    """
    h, w = mask.shape
    rmin, rmax, cmin, cmax = component.bbox
    local = component.local_mask
    bh, bw = local.shape
    out = []
    for direction in DIRECTIONS:
        sr, sc = _STEP[direction]
        extent = bh if sr else bw
        for k in range(config.fallback_max_steps + 1):
            dist = extent + config.gap + k * extent
            dr, dc = sr * dist, sc * dist
            top, left = rmin + dr, cmin + dc
            if top < 0 or top + bh > h or left < 0 or left + bw > w:
                break
            under = mask[top:top + bh, left:left + bw]
            if not np.logical_and(under, local).any():
                out.append(CandidatePlacement(direction, (dr, dc),
                                              component.rows + dr, component.cols + dc))
                break
    return out


def evaluate_cost(image: np.ndarray, ring, candidate: CandidatePlacement,
                  ring_stats: tuple[float, float] | None = None) -> CostBreakdown:
    """Score `candidate` against the known `ring` around the hole."""
    if ring_stats is None:
        rows, _ = _coords(ring)
        if rows.size == 0:
            raise EmptyRingError("cannot score a candidate against an empty ring")
        ring_stats = region_stats(image, ring)
    mu, sigma = region_stats(image, (candidate.rows, candidate.cols))
    dr, dc = candidate.translation
    return CostBreakdown(abs(mu - ring_stats[0]), abs(sigma - ring_stats[1]), math.hypot(dr, dc))


def _best(scored):
    if not scored:
        return None
    return min(scored, key=lambda pc: (pc[1].f_cost, _PRIORITY[pc[0].direction]))


def select_candidate(costs) -> CandidatePlacement | None:
    """Lowest f_cost wins; exact ties go up, down, left, right in that order."""
    best = _best(list(costs))
    return None if best is None else best[0]


# ------------------------------------------------------------ filling

def substitute(image: np.ndarray, component: RibbonComponent,
               candidate: CandidatePlacement) -> np.ndarray:
    """Copy of `image` with the component's pixels taken from the candidate."""
    out = as_rgb(image).copy()
    out[component.rows, component.cols] = out[candidate.rows, candidate.cols]
    return out


def smooth_seams(image: np.ndarray, component: RibbonComponent,
                 config: InpaintConfig = InpaintConfig()) -> np.ndarray:
    """Copy of `image` with the seam band around `component` Gaussian blurred."""
    out = as_rgb(image).copy()
    if config.smoothing:
        _smooth_into(out, component, config)
    return out


def seam_pixels(component: RibbonComponent, half_width: int,
                shape: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
    """Pixels that seam smoothing rewrites.

    The Chebyshev boundary band, minus outer pixels beyond Euclidean
    distance `half_width` of the component, so smoothing never leaves the
    disk dilation of the mask.
    """
    win, (r0, c0) = _padded_local(component, half_width, shape)
    band = _band_local(win, half_width) & ndimage.binary_dilation(win, structure=disk(half_width))
    rr, cc = np.nonzero(band)
    return rr + r0, cc + c0


def _smooth_into(out: np.ndarray, component: RibbonComponent, config: InpaintConfig) -> None:
    h, w = out.shape[:2]
    rows, cols = seam_pixels(component, config.band_half_width, (h, w))
    if rows.size == 0:
        return
    # a crop with kernel-radius context equals a full-image blur on the band
    kr = config.kernel_size // 2
    r0, r1 = max(int(rows.min()) - kr, 0), min(int(rows.max()) + kr + 1, h)
    c0, c1 = max(int(cols.min()) - kr, 0), min(int(cols.max()) + kr + 1, w)
    blurred = blur_float(out[r0:r1, c0:c1], config.sigma, config.kernel_size)
    out[rows, cols] = to_uint8(blurred[rows - r0, cols - c0])


def inpaint(image: np.ndarray, mask: np.ndarray,
            config: InpaintConfig = InpaintConfig()) -> tuple[np.ndarray, list[ComponentReport]]:
    """Fill every mask-true pixel of `image`.

    Returns the restored image and one report per work item, in processing
    order. Regions with no usable candidate, or no known ring, are filled
    with the ring's mean colour (or the mean of all known pixels) and
    reported with ``direction=None``.
    """
    image = as_rgb(image)
    mask = as_mask(mask, image.shape[:2])
    out = image.copy()
    if not mask.any():
        return out, []

    lum = luma_milli(image)
    labels, n = _piece_labels(mask, config.piece_size)
    pieces = _components_from_labels(labels, n)
    reports = []
    global_color = None
    for index, comp in enumerate(pieces):
        try:
            ring = neighbor_ring(comp, mask, config.ring_width)
        except EmptyRingError:
            ring = None
        best = None
        if ring is not None:
            ring_rc = (ring[:, 0], ring[:, 1])
            stats = region_stats(lum, ring_rc)
            scored = [(c, evaluate_cost(lum, ring_rc, c, ring_stats=stats))
                      for c in candidate_placements(comp, mask, config)]
            best = _best(scored)

        if best is not None:
            cand, cost = best
            out[comp.rows, comp.cols] = image[cand.rows, cand.cols]
            reports.append(ComponentReport(index, comp.size, cand.direction, cost))
            continue

        if ring is not None:
            color = to_uint8(image[ring[:, 0], ring[:, 1]].astype(np.float64).mean(axis=0))
        else:
            if global_color is None:
                known = image[~mask]
                global_color = (to_uint8(known.astype(np.float64).mean(axis=0))
                                if known.size else _NO_KNOWN_COLOR)
            color = global_color
        out[comp.rows, comp.cols] = color
        reports.append(ComponentReport(index, comp.size, None, None))

    if config.smoothing:
        seams = _seam_mask(labels, mask, config.band_half_width)
        blurred = blur_float(out, config.sigma, config.kernel_size)
        out[seams] = to_uint8(blurred[seams])
    return out, reports


def _seam_mask(labels: np.ndarray, mask: np.ndarray, half_width: int) -> np.ndarray:
    """Union of `seam_pixels` over every labelled piece, computed in one pass."""
    size = 2 * half_width + 1
    # a member is on a seam iff its window holds more than one label
    mixed = (ndimage.maximum_filter(labels, size=size, mode="nearest")
             != ndimage.minimum_filter(labels, size=size, mode="nearest"))
    outer = ndimage.binary_dilation(mask, structure=disk(half_width)) & ~mask
    return (mixed & mask) | outer
