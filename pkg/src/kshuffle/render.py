"""SVG output for k-tilings.

Coordinates: one face is cell_px x cell_px, the origin is the SW corner
of the diamond's bounding box and y grows downward as usual for SVG.
Dominoes are the only <rect> elements; the frame, the checkerboard and
particles use other element types so they never pollute rectangle counts.
"""
from __future__ import annotations

import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import dataclass

from .geometry import DEFAULT_PARITY, faces_of_rank
from .partitions import face_is_particle
from .tiling import CompassType, KTiling, classify

DEFAULT_PALETTE = ("#1f4fd8", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")
COMPASS_FILL = {CompassType.N: "#e8554e", CompassType.S: "#4e79e8",
                CompassType.E: "#f2c14e", CompassType.W: "#5bb36a"}


@dataclass
class RenderOptions:
    layout: str = "panels"          # or "overlay"
    cell_px: int = 12
    palette: tuple = DEFAULT_PALETTE
    show_particles: bool = False
    compass: bool = False           # fill dominoes by N/S/E/W type
    checkerboard: bool = True
    gap_px: int = 0

    def __post_init__(self):
        if self.layout not in ("panels", "overlay"):
            raise ValueError(f"unknown layout {self.layout!r}")
        if self.cell_px < 1:
            raise ValueError("cell_px must be positive")


def _diamond_outline(N, px, ox):
    # boundary edges of the region, one segment per exposed face side
    if N == 0:
        side = 2 * px
        return f"M{ox},0h{side}v{side}h-{side}z"
    faces = faces_of_rank(N)
    segs = []
    for f in sorted(faces):
        u, v = f
        for (du, dv), seg in (((0, -1), ((u, v), (u + 1, v))), ((0, 1), ((u, v + 1), (u + 1, v + 1))),
                              ((-1, 0), ((u, v), (u, v + 1))), ((1, 0), ((u + 1, v), (u + 1, v + 1)))):
            if (u + du, v + dv) not in faces:
                segs.append(seg)
    d = []
    for (a, b) in sorted(segs):
        d.append("M{},{}L{},{}".format(ox + (a[0] + N + 1) * px, (N + 1 - a[1]) * px,
                                       ox + (b[0] + N + 1) * px, (N + 1 - b[1]) * px))
    return "".join(d)


def to_svg(KT: KTiling, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    k, N, px = KT.k, KT.rank, opts.cell_px
    if len(opts.palette) < k:
        raise ValueError(f"palette has {len(opts.palette)} colors, need {k}")
    side = (2 * N + 2) * px
    panels = k if opts.layout == "panels" else 1
    width = panels * side + (panels - 1) * opts.gap_px
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
           f'height="{side}" viewBox="0 0 {width} {side}">']
    gray_faces = sorted(f for f in faces_of_rank(N) if DEFAULT_PARITY.is_gray(f, N))

    def X(u, ox):
        return ox + (u + N + 1) * px

    def Y(v, h):
        return (N + 1 - v - h) * px

    for p in range(panels):
        ox = p * (side + opts.gap_px)
        out.append(f'<g class="panel" data-panel="{p}">')
        if opts.checkerboard and gray_faces:
            d = "".join(f"M{X(u, ox)},{Y(v, 1)}h{px}v{px}h-{px}z" for u, v in gray_faces)
            out.append(f'<path class="shade" fill="#dddddd" d="{d}"/>')
        colors = range(k) if opts.layout == "overlay" else [p]
        for l in colors:
            T = KT.colors[l]
            stroke = opts.palette[l]
            for dom in T.sorted():
                wd, ht = (2, 1) if dom.orient == "h" else (1, 2)
                fill = COMPASS_FILL[classify(dom, N)] if opts.compass else "none"
                out.append(f'<rect x="{X(dom.u, ox)}" y="{Y(dom.v, ht)}" width="{wd * px}" '
                           f'height="{ht * px}" fill="{fill}" stroke="{stroke}" '
                           f'data-color="{l}" data-u="{dom.u}" data-v="{dom.v}" data-o="{dom.orient}"/>')
            if opts.show_particles:
                r = max(px // 4, 1)
                for f in sorted(T.cover):
                    if face_is_particle(T, f):
                        out.append(f'<circle cx="{X(f.u, ox) + px // 2}" cy="{Y(f.v, 1) + px // 2}" '
                                   f'r="{r}" fill="{stroke}" data-color="{l}"/>')
        outline = _diamond_outline(N, px, ox)
        out.append(f'<path class="frame" fill="none" stroke="#000000" d="{outline}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def read_dominoes(svg: str) -> Counter:
    """Multiset of (color, u, v, orient) recovered from an SVG produced here."""
    root = ET.fromstring(svg)
    got = Counter()
    for el in root.iter("{http://www.w3.org/2000/svg}rect"):
        got[(int(el.get("data-color")), int(el.get("data-u")), int(el.get("data-v")), el.get("data-o"))] += 1
    return got
