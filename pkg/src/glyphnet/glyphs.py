"""The 26-letter binary alphabet: 9x9 glyphs, font file parsing, noise."""

from dataclasses import dataclass
from importlib.resources import files

import numpy as np

GRID = 9
PIXEL_COUNT = GRID * GRID
LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"

ON_CHAR = "#"
OFF_CHAR = "."

_FONT_RESOURCE = "data/alphabet.font"
_builtin_cache = None


class FontError(ValueError):
    """A font file or glyph violates the expected format."""


@dataclass(eq=False)
class Glyph:
    """One letter as a 9x9 grid of 0/1 pixels.

    Construction does not validate, so synthetic grids (all zeros, single
    pixel) can be built for analysis and tests. Glyphs that enter the
    dataset go through validate().
    """

    letter: str
    pixels: np.ndarray

    def __post_init__(self):
        self.pixels = np.array(self.pixels, dtype=np.uint8)
        self.pixels.flags.writeable = False

    def __eq__(self, other):
        if not isinstance(other, Glyph):
            return NotImplemented
        return self.letter == other.letter and np.array_equal(self.pixels, other.pixels)

    def validate(self):
        """Check shape, binary values and full-grid extent. Raises FontError."""
        if len(self.letter) != 1 or self.letter not in LETTERS:
            raise FontError(f"glyph letter must be one of A-Z, got {self.letter!r}")
        if self.pixels.shape != (GRID, GRID):
            raise FontError(f"glyph {self.letter}: expected a {GRID}x{GRID} grid")
        if not np.isin(self.pixels, (0, 1)).all():
            raise FontError(f"glyph {self.letter}: pixels must be 0 or 1")
        for name, line in (("row 0", self.pixels[0]), ("row 8", self.pixels[-1]),
                           ("column 0", self.pixels[:, 0]), ("column 8", self.pixels[:, -1])):
            if not line.any():
                raise FontError(
                    f"glyph {self.letter}: {name} is empty, letter must span the full grid")


def flatten(glyph):
    """Row-major 81-vector of a glyph's pixels (index = 9*row + col)."""
    pixels = glyph.pixels if isinstance(glyph, Glyph) else np.asarray(glyph)
    if pixels.shape != (GRID, GRID):
        raise ValueError(f"expected a {GRID}x{GRID} grid, got shape {pixels.shape}")
    return pixels.reshape(PIXEL_COUNT).astype(np.float64)


def parse_font(text):
    """Parse font file text into a list of validated glyphs, in file order.

    Each glyph is a header line ``letter X`` followed by nine rows of nine
    characters from {., #} and a blank separator line. Errors mention the
    offending 1-based line number.
    """
    lines = text.splitlines()
    glyphs = []
    seen = set()
    pos = 0
    while True:
        while pos < len(lines) and not lines[pos].strip():
            pos += 1
        if pos >= len(lines):
            break
        header = lines[pos]
        header_line = pos + 1
        parts = header.split()
        if len(parts) != 2 or parts[0] != "letter":
            raise FontError(f"line {header_line}: expected 'letter X' header, got {header!r}")
        letter = parts[1]
        if len(letter) != 1 or letter not in LETTERS:
            raise FontError(f"line {header_line}: letter must be one of A-Z, got {letter!r}")
        if letter in seen:
            raise FontError(f"line {header_line}: duplicate letter {letter}")
        seen.add(letter)
        pos += 1

        rows = []
        for r in range(GRID):
            if pos >= len(lines):
                raise FontError(f"line {len(lines)}: unexpected end of file inside glyph {letter}")
            row = lines[pos]
            if len(row) != GRID:
                raise FontError(
                    f"line {pos + 1}: bad line length {len(row)}, expected {GRID} characters")
            bits = []
            for ch in row:
                if ch == ON_CHAR:
                    bits.append(1)
                elif ch == OFF_CHAR:
                    bits.append(0)
                else:
                    raise FontError(f"line {pos + 1}: invalid character {ch!r}, expected '.' or '#'")
            rows.append(bits)
            pos += 1

        if pos < len(lines) and lines[pos].strip():
            raise FontError(f"line {pos + 1}: expected blank line after glyph {letter}")

        glyph = Glyph(letter, np.array(rows, dtype=np.uint8))
        try:
            glyph.validate()
        except FontError as exc:
            raise FontError(f"line {header_line}: {exc}") from None
        glyphs.append(glyph)
    return glyphs


def render_font(glyphs):
    """Inverse of parse_font: glyphs back to font file text."""
    blocks = []
    for glyph in glyphs:
        rows = ["".join(ON_CHAR if v else OFF_CHAR for v in row) for row in glyph.pixels]
        blocks.append("letter " + glyph.letter + "\n" + "\n".join(rows) + "\n")
    return "\n".join(blocks)


def load_font(path):
    """Parse a complete 26-letter font file, returned in A-Z order."""
    with open(path, "r", encoding="ascii") as handle:
        glyphs = parse_font(handle.read())
    if len(glyphs) != 26:
        raise FontError(f"font file has {len(glyphs)} letters, a full alphabet needs 26")
    return sorted(glyphs, key=lambda g: g.letter)


def builtin_alphabet():
    """The packaged alphabet, one glyph per letter A-Z in alphabetical order."""
    global _builtin_cache
    if _builtin_cache is None:
        text = files("glyphnet").joinpath(_FONT_RESOURCE).read_text(encoding="ascii")
        glyphs = parse_font(text)
        if len(glyphs) != 26:
            raise FontError(f"packaged font has {len(glyphs)} letters, expected 26")
        _builtin_cache = tuple(sorted(glyphs, key=lambda g: g.letter))
    return list(_builtin_cache)


def apply_noise(values, rate, rng):
    """Flip each of the 81 entries independently with probability `rate`.

    Consumes exactly 81 uniform draws from `rng` per call, so a fixed seed
    reproduces the same noise. Output stays binary.
    """
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"noise rate must be in [0, 1], got {rate}")
    values = np.asarray(values, dtype=np.float64)
    flips = rng.random(values.shape) < rate
    return np.where(flips, 1.0 - values, values)
