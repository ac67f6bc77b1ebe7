"""
Synthetic ribbon degradation
============================

Draw random thick scratches onto an image and look at what the mask holds.
"""

# The degradation is fully described by three numbers: how many ribbons,
# their width and a seed. Same numbers, same mask, on any machine.
from pathlib import Path

import numpy as np

from ribbons import DegradationSpec, connected_components, degrade, write_mask, write_rgb
from ribbons.corpus import terrain

out = Path("demo_output")
out.mkdir(exist_ok=True)

image = terrain(512)
spec = DegradationSpec(line_count=20, width=9, seed=7)
degraded, mask = degrade(image, spec)

print(f"masked fraction: {mask.mean():.3f}")

# Endpoints are uniform over the image, so long ribbons cross often and
# merge into a few large connected components.
comps = connected_components(mask)
print(f"{len(comps)} connected components, largest has {max(c.size for c in comps)} pixels")

# Masked pixels are painted white; the inpainting step only looks at the mask.
assert np.all(degraded[mask] == 255)

write_rgb(out / "original.png", image)
write_rgb(out / "degraded.png", degraded)
write_mask(out / "mask.png", mask)

# Widths and counts change the damage roughly the way you would expect.
for width in (3, 5, 9, 11):
    _, m = degrade(image, DegradationSpec(20, width, seed=7))
    print(f"width {width:2d}: {m.mean():.3f} of the image masked")
