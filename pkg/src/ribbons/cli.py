"""``ribbons`` command line: degrade, inpaint, eval, bench, corpus."""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import bench
from .corpus import write_corpus
from .degradation import DegradationSpec, degrade
from .inpaint import InpaintConfig, inpaint
from .metrics import quality
from .raster import read_mask, read_rgb, write_mask, write_rgb


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _piece_size(text: str) -> int | None:
    return None if text.lower() in ("none", "0") else int(text)


def _add_inpaint_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("inpainting")
    g.add_argument("--no-smooth", action="store_true", help="skip seam smoothing")
    g.add_argument("--gap", type=int, default=1, help="pixels between hole and candidate (default 1)")
    g.add_argument("--sigma", type=float, default=1.0, help="seam blur sigma (default 1.0)")
    g.add_argument("--kernel", type=int, default=5, help="seam blur kernel size, odd (default 5)")
    g.add_argument("--ring-width", type=int, default=2,
                   help="width of the known ring used for statistics (default 2)")
    g.add_argument("--piece-size", type=_piece_size, default=16,
                   help="split regions wider or taller than this; 'none' keeps whole components")


def _config(args) -> InpaintConfig:
    return InpaintConfig(gap=args.gap, smoothing=not args.no_smooth, sigma=args.sigma,
                         kernel_size=args.kernel, ring_width=args.ring_width,
                         piece_size=args.piece_size)


def cmd_degrade(args) -> int:
    image = read_rgb(args.input)
    degraded, mask = degrade(image, DegradationSpec(args.lines, args.width, args.seed))
    write_rgb(args.out, degraded)
    write_mask(args.mask_out, mask)
    return 0


def cmd_inpaint(args) -> int:
    image = read_rgb(args.input)
    mask = read_mask(args.mask)
    config = _config(args)
    t0 = time.perf_counter()
    restored, report = inpaint(image, mask, config)
    elapsed = (time.perf_counter() - t0) * 1000.0
    write_rgb(args.out, restored)
    for entry in report:
        print(entry.to_json())
    print(json.dumps({"components": len(report),
                      "fallbacks": sum(r.fallback for r in report),
                      "wall_time_ms": elapsed}))
    return 0


def cmd_eval(args) -> int:
    print(quality(read_rgb(args.ref), read_rgb(args.test)).to_json())
    return 0


def cmd_bench(args) -> int:
    images = bench.load_dataset(args.dataset)
    records = bench.run_benchmark(images, args.lines_set, args.widths_set, args.seeds,
                                  _config(args), csv_path=args.csv)
    print(json.dumps({"rows": len(records), "cells": bench.summarize(records)}, indent=2))
    return 0


def cmd_corpus(args) -> int:
    for path in write_corpus(args.out, args.size):
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ribbons", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degrade", help="draw random ribbons onto an image")
    p.add_argument("--in", dest="input", required=True, help="input RGB PNG")
    p.add_argument("--out", required=True, help="degraded image PNG")
    p.add_argument("--mask", dest="mask_out", required=True, help="mask PNG (255 = degraded)")
    p.add_argument("--lines", type=int, default=20, help="number of ribbons (default 20)")
    p.add_argument("--width", type=int, default=9, help="ribbon width, odd (default 9)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_degrade)

    p = sub.add_parser("inpaint", help="restore masked pixels",
                       description="Restore masked pixels. Prints one JSON line per work item "
                                   "and a final line with the wall time of the inpaint call "
                                   "(image I/O excluded).")
    p.add_argument("--in", dest="input", required=True, help="degraded RGB PNG")
    p.add_argument("--mask", required=True, help="mask PNG; any nonzero byte is degraded")
    p.add_argument("--out", required=True, help="restored image PNG")
    _add_inpaint_flags(p)
    p.set_defaults(func=cmd_inpaint)

    p = sub.add_parser("eval", help="PSNR and SSIM of a test image against a reference")
    p.add_argument("--ref", required=True, help="reference PNG")
    p.add_argument("--test", "--in", dest="test", required=True, help="test PNG")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="run a degradation/inpainting sweep into a CSV",
                       description="For each image x lines x width x seed: degrade, time the "
                                   "inpaint call alone (no disk I/O), score degraded and "
                                   "restored images; write one CSV row per cell and print "
                                   "per-cell quartile summaries.")
    p.add_argument("--dataset", required=True, help="directory of PNG images")
    p.add_argument("--lines-set", type=_int_list, default=[20], help="e.g. 5,10,15,20")
    p.add_argument("--widths-set", type=_int_list, default=[9], help="e.g. 3,5,7,9,11")
    p.add_argument("--seeds", type=int, default=10, help="seeds 0..N-1 per cell (default 10)")
    p.add_argument("--csv", required=True, help="output CSV path")
    _add_inpaint_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("corpus", help="write the synthetic test images")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--size", type=int, default=512)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"ribbons {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
