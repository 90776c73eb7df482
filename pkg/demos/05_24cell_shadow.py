"""
Shadow of the 24-cell
=====================

Write the projection of the 24-cell onto a random plane as SVG and as
CSV. Whatever the plane, the squared lengths of the 96 shadow segments
add up to 96 * 2 / 4 = 48.
"""

import sys

import numpy as np

from sumsquares.cli import projected_segments, segments_csv, segments_svg
from sumsquares.numeric import random_subspace
from sumsquares.polytopes import build

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 3
p = build("24cell")
s = random_subspace(4, 2, seed)
segs = projected_segments(p, s)

print("sum of squared shadow lengths:", float(((segs[:, 1] - segs[:, 0]) ** 2).sum()))
with open("24cell_shadow.svg", "w") as fh:
    fh.write(segments_svg(segs, f"24cell seed {seed}"))
with open("24cell_shadow.csv", "w") as fh:
    fh.write(segments_csv(segs))
print("wrote 24cell_shadow.svg and 24cell_shadow.csv; longest segment",
      np.linalg.norm(segs[:, 1] - segs[:, 0], axis=1).max())
