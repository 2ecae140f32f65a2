"""Rank-256 samples over a grid of (k, t, c=b) settings, written as SVG plus
an optional PNG preview.  Names encode the setting.

    python3 scripts/gallery.py --out gallery/ [--rank 256] [--png]

The PNG preview needs Pillow; the SVGs do not.
"""
import argparse
import os
import time

import numpy as np

from kshuffle import render, shuffle
from kshuffle.tiling import CompassType, WeightConfig, classify

RUNS = [
    ("k3_t1_w1", 3, 1.0, 1.0),
    ("k2_t0.2_w1", 2, 0.2, 1.0),
    ("k2_t0.2_w2", 2, 0.2, 2.0),
    ("k2_t0.2_w0.5", 2, 0.2, 0.5),
    ("k2_t5_w2", 2, 5.0, 2.0),
    ("k2_t0_w5", 2, 0.0, 5.0),
    ("k2_t1e4_w1", 2, 10000.0, 1.0),
    ("k3_t0.2_w2", 3, 0.2, 2.0),
]

RGB = {CompassType.N: (232, 85, 78), CompassType.S: (78, 121, 232),
       CompassType.E: (242, 193, 78), CompassType.W: (91, 179, 106)}


def png_preview(KT, path, px=2):
    from PIL import Image
    N = KT.rank
    side = (2 * N + 2) * px
    img = np.full((side, KT.k * side, 3), 255, np.uint8)
    for l, T in enumerate(KT.colors):
        for d in T.dominoes:
            w, h = (2, 1) if d.orient == "h" else (1, 2)
            x0 = l * side + (d.u + N + 1) * px
            y0 = (N + 1 - d.v - h) * px
            img[y0:y0 + h * px, x0:x0 + w * px] = RGB[classify(d, N)]
    Image.fromarray(img).save(path)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="gallery")
    ap.add_argument("--rank", type=int, default=256)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--png", action="store_true")
    ap.add_argument("--only", nargs="*")
    a = ap.parse_args()
    os.makedirs(a.out, exist_ok=True)
    for name, k, t, cb in RUNS:
        if a.only and name not in a.only:
            continue
        w = WeightConfig.uniform(a.rank, t, value=cb)
        t0 = time.time()
        KT = shuffle.sample(a.rank, k, w, a.seed)
        dt = time.time() - t0
        svg = render.to_svg(KT, render.RenderOptions(cell_px=2, compass=True, checkerboard=False))
        with open(os.path.join(a.out, name + ".svg"), "w") as fh:
            fh.write(svg)
        if a.png:
            png_preview(KT, os.path.join(a.out, name + ".png"))
        print(f"{name}: k={k} t={t} c=b={cb}  {dt:.2f}s")


if __name__ == "__main__":
    main()
