"""Bit-exact raster output: heatmaps to binary PPM with a two-color palette.

High values render toward the palette's high color (red by default), low
values toward the low color (yellow). PPM P6 keeps golden-file tests to a
plain byte comparison.
"""

from dataclasses import dataclass

import numpy as np

from .glyphs import GRID

WHITE = (255, 255, 255)


@dataclass(frozen=True)
class Palette:
    low_color: tuple
    high_color: tuple
    name: str

    def __post_init__(self):
        if tuple(self.low_color) == tuple(self.high_color):
            raise ValueError("palette endpoints must differ")


DEFAULT_PALETTE = Palette(low_color=(255, 255, 0), high_color=(255, 0, 0), name="yellow-red")


def _values(heatmap):
    return heatmap.values if hasattr(heatmap, "values") else np.asarray(heatmap, dtype=np.float64)


def normalize(heatmap):
    """Min-max normalize a heatmap to [0, 1]; a constant map becomes all 0.5."""
    values = _values(heatmap)
    low = values.min()
    high = values.max()
    if high == low:
        return np.full_like(values, 0.5, dtype=np.float64)
    return (values - low) / (high - low)


def _colorize(normalized, palette):
    """Per-channel linear interpolation, rounded half-up to 8-bit values."""
    low = np.asarray(palette.low_color, dtype=np.float64)
    high = np.asarray(palette.high_color, dtype=np.float64)
    blended = low + normalized[..., None] * (high - low)
    return np.floor(blended + 0.5).astype(np.uint8)


def _scale(rgb, cell_size):
    return np.repeat(np.repeat(rgb, cell_size, axis=0), cell_size, axis=1)


def _ppm_bytes(image):
    height, width = image.shape[:2]
    return b"P6 %d %d 255\n" % (width, height) + image.tobytes()


def render_ppm(heatmap, palette=DEFAULT_PALETTE, cell_size=8):
    """One heatmap as a binary PPM, each cell a cell_size x cell_size block."""
    if cell_size < 1:
        raise ValueError(f"cell_size must be at least 1, got {cell_size}")
    rgb = _colorize(normalize(heatmap), palette)
    return _ppm_bytes(_scale(rgb, cell_size))


def render_montage(heatmaps, palette=DEFAULT_PALETTE, cell_size=8, gap=2):
    """Heatmaps side by side in one PPM, each normalized on its own,
    separated by `gap` columns of white."""
    if not heatmaps:
        raise ValueError("montage needs at least one heatmap")
    if cell_size < 1:
        raise ValueError(f"cell_size must be at least 1, got {cell_size}")
    if gap < 0:
        raise ValueError(f"gap must be nonnegative, got {gap}")
    tiles = [_scale(_colorize(normalize(m), palette), cell_size) for m in heatmaps]
    side = GRID * cell_size
    width = len(tiles) * side + (len(tiles) - 1) * gap
    image = np.full((side, width, 3), 255, dtype=np.uint8)
    for index, tile in enumerate(tiles):
        start = index * (side + gap)
        image[:, start:start + side] = tile
    return _ppm_bytes(image)
