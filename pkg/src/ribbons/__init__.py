"""Rapid ribbon-scratch inpainting from neighbourhood statistics."""
from .degradation import DegradationSpec, apply_degradation, degrade, generate_mask
from .inpaint import (
    CandidatePlacement,
    ComponentReport,
    CostBreakdown,
    EmptyRingError,
    InpaintConfig,
    candidate_placements,
    evaluate_cost,
    inpaint,
    neighbor_ring,
    region_stats,
    select_candidate,
    smooth_seams,
    split_components,
    substitute,
)
from .metrics import QualityScore, psnr, quality, ssim
from .raster import (
    RibbonComponent,
    boundary_band,
    connected_components,
    dilate,
    gaussian_blur,
    luminance,
    rasterize_segment,
    read_mask,
    read_rgb,
    write_mask,
    write_rgb,
)

__version__ = "0.1.0"
