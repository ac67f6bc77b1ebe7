"""Benchmark harness: degrade, time the inpaint call, score, tabulate.

Every (image, line count, width, seed) cell yields one `ExperimentRecord`.
Only the `inpaint` call is inside the timer; disk I/O, degradation and
scoring are not.
"""
from __future__ import annotations

import csv
import math
import time
from dataclasses import astuple, dataclass
from pathlib import Path

import numpy as np
from scipy import stats

from .degradation import DegradationSpec, degrade
from .inpaint import InpaintConfig, inpaint
from .metrics import psnr, ssim
from .raster import read_rgb

CSV_HEADER = (
    "image_id", "line_count", "width", "seed",
    "psnr_degraded", "psnr_inpainted", "ssim_degraded", "ssim_inpainted",
    "wall_time_ms", "fallback_count",
)


@dataclass(frozen=True)
class ExperimentRecord:
    image_id: str
    line_count: int
    width: int
    seed: int
    psnr_degraded: float
    psnr_inpainted: float
    ssim_degraded: float
    ssim_inpainted: float
    wall_time_ms: float
    fallback_count: int

    @property
    def metrics(self) -> tuple:
        """Everything but the timing column, for reproducibility checks."""
        return astuple(self)[:8] + (self.fallback_count,)


def load_dataset(directory) -> dict[str, np.ndarray]:
    """All ``*.png`` files in `directory`, keyed by file stem, sorted by name."""
    paths = sorted(Path(directory).glob("*.png"))
    if not paths:
        raise ValueError(f"no PNG images found in {directory}")
    return {p.stem: read_rgb(p) for p in paths}


def run_cell(image_id: str, image: np.ndarray, line_count: int, width: int, seed: int,
             config: InpaintConfig = InpaintConfig()) -> ExperimentRecord:
    degraded, mask = degrade(image, DegradationSpec(line_count, width, seed))
    t0 = time.perf_counter()
    restored, report = inpaint(degraded, mask, config)
    elapsed = (time.perf_counter() - t0) * 1000.0
    return ExperimentRecord(
        image_id, line_count, width, seed,
        psnr(image, degraded), psnr(image, restored),
        ssim(image, degraded), ssim(image, restored),
        elapsed, sum(r.fallback for r in report),
    )


def run_benchmark(images: dict[str, np.ndarray], lines_set, widths_set, seeds: int,
                  config: InpaintConfig = InpaintConfig(), csv_path=None) -> list[ExperimentRecord]:
    """Run the full grid sequentially; seeds are ``0 .. seeds-1``.

    If `csv_path` is given, rows are appended to it as they complete, after a
    header line.
    """
    if not images:
        raise ValueError("benchmark needs at least one image")
    records = []
    writer = handle = None
    if csv_path is not None:
        handle = open(csv_path, "w", newline="")
        writer = csv.writer(handle)
        writer.writerow(CSV_HEADER)
    try:
        for image_id, image in images.items():
            for line_count in lines_set:
                for width in widths_set:
                    for seed in range(seeds):
                        rec = run_cell(image_id, image, line_count, width, seed, config)
                        records.append(rec)
                        if writer is not None:
                            writer.writerow(_csv_row(rec))
                            handle.flush()
    finally:
        if handle is not None:
            handle.close()
    return records


def _fmt(value):
    if isinstance(value, float):
        return "inf" if math.isinf(value) else repr(value)
    return value


def _csv_row(rec: ExperimentRecord) -> list:
    return [_fmt(v) for v in astuple(rec)]


def read_csv(path) -> list[ExperimentRecord]:
    casts = (str, int, int, int, float, float, float, float, float, int)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header}")
        return [ExperimentRecord(*(cast(v) for cast, v in zip(casts, row))) for row in reader]


def _percentile(sorted_values: np.ndarray, q: float) -> float:
    # linear interpolation, but equal neighbours (e.g. two infs) need none
    pos = q * (sorted_values.size - 1)
    lo, hi = sorted_values[int(np.floor(pos))], sorted_values[int(np.ceil(pos))]
    if lo == hi:
        return float(lo)
    return float(lo + (hi - lo) * (pos - np.floor(pos)))


def _quartiles(values) -> dict:
    v = np.sort(np.asarray(values, dtype=np.float64))
    return {"mean": float(v.mean()), "median": _percentile(v, 0.5),
            "q1": _percentile(v, 0.25), "q3": _percentile(v, 0.75),
            "min": float(v[0]), "max": float(v[-1])}


def summarize(records: list[ExperimentRecord]) -> list[dict]:
    """Box-plot statistics per (line_count, width) cell, pooled over images and seeds."""
    cells: dict[tuple[int, int], list[ExperimentRecord]] = {}
    for rec in records:
        cells.setdefault((rec.line_count, rec.width), []).append(rec)
    out = []
    for (line_count, width), recs in sorted(cells.items()):
        out.append({
            "line_count": line_count,
            "width": width,
            "n": len(recs),
            "psnr_degraded": _quartiles([r.psnr_degraded for r in recs]),
            "psnr_inpainted": _quartiles([r.psnr_inpainted for r in recs]),
            "ssim_degraded": _quartiles([r.ssim_degraded for r in recs]),
            "ssim_inpainted": _quartiles([r.ssim_inpainted for r in recs]),
            "wall_time_ms": _quartiles([r.wall_time_ms for r in recs]),
            "fallback_count": int(sum(r.fallback_count for r in recs)),
        })
    return out


def relative_improvement(records: list[ExperimentRecord]) -> tuple[float, float]:
    """Mean of ``(inpainted - degraded) / degraded`` for PSNR and for SSIM."""
    p = [(r.psnr_inpainted - r.psnr_degraded) / r.psnr_degraded for r in records]
    s = [(r.ssim_inpainted - r.ssim_degraded) / r.ssim_degraded for r in records]
    return float(np.mean(p)), float(np.mean(s))


def trend(records: list[ExperimentRecord], key: str, metric: str = "psnr_inpainted") -> float:
    """Spearman rho between a degradation parameter and the per-level mean metric.

    `key` is ``"line_count"`` or ``"width"``; records are grouped by that
    value and `metric` is averaged within each group.
    """
    groups: dict[int, list[float]] = {}
    for rec in records:
        groups.setdefault(getattr(rec, key), []).append(getattr(rec, metric))
    levels = sorted(groups)
    if len(levels) < 2:
        raise ValueError("trend needs at least two parameter levels")
    means = [float(np.mean(groups[k])) for k in levels]
    return float(stats.spearmanr(levels, means).statistic)
