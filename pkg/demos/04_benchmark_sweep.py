"""
Quality and speed sweeps
========================

Reproduce the width and line-count sweeps on the synthetic corpus, at a
smaller scale than the acceptance suite.
"""

import numpy as np

from ribbons import bench
from ribbons.corpus import synthetic_corpus

images = synthetic_corpus(512)

# More ribbons, fixed width.
records = bench.run_benchmark(images, [5, 10, 15, 20], [9], seeds=3)
for cell in bench.summarize(records):
    p = cell["psnr_inpainted"]
    print(f"{cell['line_count']:2d} lines: PSNR median {p['median']:.2f} "
          f"[{p['q1']:.2f}, {p['q3']:.2f}]  time {cell['wall_time_ms']['median']:.0f} ms")
print("Spearman rho(lines, PSNR) =", round(bench.trend(records, "line_count"), 3))

# Wider ribbons, fixed count.
records = bench.run_benchmark(images, [10], [3, 5, 7, 9, 11], seeds=3)
gain_psnr, gain_ssim = bench.relative_improvement(records)
print(f"mean relative gain over the degraded input: PSNR {100 * gain_psnr:.1f}%, "
      f"SSIM {100 * gain_ssim:.1f}%")
print("Spearman rho(width, PSNR) =", round(bench.trend(records, "width"), 3))

times = np.array([r.wall_time_ms for r in records])
print(f"inpaint wall time: median {np.median(times):.0f} ms, max {times.max():.0f} ms")
