import re
from collections import Counter
import xml.etree.ElementTree as ET

import pytest

from figures import rank3_example
from kshuffle.partitions import face_is_particle
from kshuffle.render import RenderOptions, read_dominoes, to_svg
from kshuffle.shuffle import empty_ktiling, sample
from kshuffle.tiling import KTiling, Tiling, WeightConfig


def test_rank0_is_frame_only():
    svg = to_svg(KTiling([Tiling(0, [])]))
    assert "<rect" not in svg
    assert 'class="frame"' in svg
    ET.fromstring(svg)


def test_rank3_example_panels_roundtrip():
    KT = rank3_example()
    svg = to_svg(KT, RenderOptions(layout="panels"))
    assert svg.count('class="panel"') == 3
    want = Counter((l, d.u, d.v, d.orient) for l, T in enumerate(KT.colors) for d in T.dominoes)
    assert read_dominoes(svg) == want


def test_overlay_single_panel():
    svg = to_svg(rank3_example(), RenderOptions(layout="overlay"))
    assert svg.count('class="panel"') == 1
    assert sum(read_dominoes(svg).values()) == 36


def test_particles_drawn():
    KT = rank3_example()
    svg = to_svg(KT, RenderOptions(show_particles=True))
    n = sum(face_is_particle(T, f) for T in KT.colors for f in T.cover)
    assert svg.count("<circle") == n


def test_compass_colors_present():
    KT = sample(16, 2, WeightConfig.uniform(16, 0.2), 1)
    svg = to_svg(KT, RenderOptions(compass=True, cell_px=3))
    fills = set(re.findall(r'<rect[^>]*fill="(#[0-9a-f]{6})"', svg))
    assert len(fills) == 4


def test_deterministic_output():
    KT = sample(10, 3, WeightConfig.uniform(10, 0.5), 3)
    assert to_svg(KT) == to_svg(sample(10, 3, WeightConfig.uniform(10, 0.5), 3))


def test_bad_options():
    with pytest.raises(ValueError):
        RenderOptions(layout="grid")
    with pytest.raises(ValueError):
        to_svg(empty_ktiling(9))
