from pathlib import Path

import numpy as np
import pytest

from glyphnet.analysis import Heatmap9x9
from glyphnet.render import DEFAULT_PALETTE, Palette, normalize, render_montage, render_ppm

GOLDEN_DIR = Path(__file__).parent / "golden"


def ramp_map():
    return Heatmap9x9(np.arange(81.0).reshape(9, 9), 0)


def constant_map(value=3.7):
    return Heatmap9x9(np.full((9, 9), value), 0)


def split_ppm(data):
    header, _, payload = data.partition(b"\n")
    magic, width, height, maxval = header.split()
    assert magic == b"P6" and maxval == b"255"
    return int(width), int(height), payload


def test_normalize_extremes():
    normalized = normalize(ramp_map())
    assert normalized[0, 0] == 0.0
    assert normalized[8, 8] == 1.0
    assert ((normalized >= 0.0) & (normalized <= 1.0)).all()


def test_normalize_constant_map_is_half():
    assert (normalize(constant_map()) == 0.5).all()


def test_normalize_shift_invariance():
    rng = np.random.default_rng(41)
    values = rng.normal(size=(9, 9))
    for shift in (-3.0, 0.25, 1000.0):
        assert np.allclose(normalize(values), normalize(values + shift), atol=1e-12)


def test_render_constant_map_is_midpoint_color():
    width, height, payload = split_ppm(render_ppm(constant_map(), cell_size=2))
    assert (width, height) == (18, 18)
    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(-1, 3)
    assert (pixels == (255, 128, 0)).all()


def test_render_endpoint_colors():
    width, height, payload = split_ppm(render_ppm(ramp_map(), cell_size=1))
    assert (width, height) == (9, 9)
    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(9, 9, 3)
    assert tuple(pixels[0, 0]) == (255, 255, 0)  # minimum renders pure yellow
    assert tuple(pixels[8, 8]) == (255, 0, 0)    # maximum renders pure red


def test_render_payload_size_and_determinism():
    first = render_ppm(ramp_map(), cell_size=4)
    second = render_ppm(ramp_map(), cell_size=4)
    assert first == second
    width, height, payload = split_ppm(first)
    assert (width, height) == (36, 36)
    assert len(payload) == 36 * 36 * 3


def test_render_matches_golden_file():
    golden = (GOLDEN_DIR / "ramp_cell4.ppm").read_bytes()
    assert render_ppm(ramp_map(), DEFAULT_PALETTE, cell_size=4) == golden


def test_render_rejects_bad_cell_size():
    with pytest.raises(ValueError):
        render_ppm(ramp_map(), cell_size=0)


def test_montage_of_one_map_with_no_gap_equals_single_render():
    assert render_montage([ramp_map()], cell_size=3, gap=0) == render_ppm(ramp_map(), cell_size=3)


def test_montage_layout_arithmetic():
    maps = [ramp_map() for _ in range(6)]
    width, height, payload = split_ppm(render_montage(maps, cell_size=4, gap=2))
    assert width == 6 * 9 * 4 + 5 * 2
    assert height == 9 * 4
    assert len(payload) == width * height * 3


def test_montage_gap_is_white():
    maps = [constant_map(), constant_map()]
    width, height, payload = split_ppm(render_montage(maps, cell_size=1, gap=3))
    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3)
    assert (pixels[:, :9] == (255, 128, 0)).all()
    assert (pixels[:, 9:12] == (255, 255, 255)).all()
    assert (pixels[:, 12:] == (255, 128, 0)).all()


def test_montage_normalizes_each_map_independently():
    small = Heatmap9x9(np.ones((9, 9)), 0)      # constant, renders midpoint
    big = Heatmap9x9(np.arange(81.0).reshape(9, 9) * 100, 1)
    width, _, payload = split_ppm(render_montage([small, big], cell_size=1, gap=0))
    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(9, width, 3)
    assert (pixels[:, :9] == (255, 128, 0)).all()
    assert tuple(pixels[0, 9]) == (255, 255, 0)
    assert tuple(pixels[8, 17]) == (255, 0, 0)


def test_montage_validation():
    with pytest.raises(ValueError):
        render_montage([], cell_size=1, gap=0)
    with pytest.raises(ValueError):
        render_montage([ramp_map()], cell_size=1, gap=-1)


def test_palette_requires_distinct_endpoints():
    with pytest.raises(ValueError):
        Palette((1, 2, 3), (1, 2, 3), "degenerate")


def test_custom_palette_interpolation():
    palette = Palette((0, 0, 0), (200, 100, 50), "black-amber")
    _, _, payload = split_ppm(render_ppm(constant_map(), palette, cell_size=1))
    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(-1, 3)
    assert (pixels == (100, 50, 25)).all()
