"""Feature-set classes: the fixed grouping of the alphabet into 10 groups
of similarly shaped letters, plus one-hot targets for both experiments."""

from dataclasses import dataclass

import numpy as np

from .glyphs import LETTERS, builtin_alphabet, flatten

# Fixed partition of the alphabet, keyed by a representative letter.
_FEATURE_SETS = (
    ("A", ("A", "H")),
    ("B", ("B", "R", "P")),
    ("C", ("C", "G")),
    ("E", ("E", "F", "S")),
    ("I", ("Z", "T", "I", "J")),
    ("K", ("Y", "K", "X")),
    ("L", ("L", "U")),
    ("M", ("N", "M")),
    ("O", ("O", "Q", "D")),
    ("V", ("V", "W")),
)


@dataclass(frozen=True)
class FeatureSetTable:
    """Ordered mapping from class label to its letters."""

    entries: tuple

    @property
    def labels(self):
        return tuple(label for label, _ in self.entries)

    def letters_of(self, label):
        for candidate, letters in self.entries:
            if candidate == label:
                return letters
        raise KeyError(label)

    def class_count(self):
        return len(self.entries)


def builtin_feature_sets():
    """The fixed 10-class grouping of similarly shaped letters."""
    return FeatureSetTable(_FEATURE_SETS)


def class_of(table, letter):
    """Index of the class containing `letter`, in fixed label order."""
    if not isinstance(letter, str) or len(letter) != 1 or letter not in LETTERS:
        raise ValueError(f"letter must be one of A-Z, got {letter!r}")
    for index, (_, letters) in enumerate(table.entries):
        if letter in letters:
            return index
    raise ValueError(f"letter {letter} is missing from the feature-set table")


def one_hot(index, size):
    target = np.zeros(size, dtype=np.float64)
    target[index] = 1.0
    return target


def targets_experiment1(glyphs=None):
    """26 (input, target) pairs with one output class per letter (A=0 .. Z=25)."""
    glyphs = builtin_alphabet() if glyphs is None else sorted(glyphs, key=lambda g: g.letter)
    return [(flatten(g), one_hot(LETTERS.index(g.letter), 26)) for g in glyphs]


def targets_experiment2(glyphs=None, table=None):
    """26 (input, target) pairs with one output class per feature set (10 classes)."""
    glyphs = builtin_alphabet() if glyphs is None else sorted(glyphs, key=lambda g: g.letter)
    table = builtin_feature_sets() if table is None else table
    size = table.class_count()
    return [(flatten(g), one_hot(class_of(table, g.letter), size)) for g in glyphs]


def format_feature_sets(table):
    """Plain-text report, one line per class: label, colon, its letters."""
    return "\n".join(f"{label}: {', '.join(letters)}" for label, letters in table.entries) + "\n"
