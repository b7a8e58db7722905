"""Interpretation of a trained network: weight heatmaps per hidden node,
glyph-masked overlays, and which letters drive each node."""

from dataclasses import dataclass

import numpy as np

from .glyphs import GRID, PIXEL_COUNT, flatten
from .mlp import forward

DEFAULT_THRESHOLD = 0.5


@dataclass
class Heatmap9x9:
    """A 9x9 value grid ready for rendering, tagged with its origin."""

    values: np.ndarray
    node_index: int
    letter: str = None
    tag: str = ""

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (GRID, GRID):
            raise ValueError(f"heatmap must be {GRID}x{GRID}, got {self.values.shape}")
        if not np.isfinite(self.values).all():
            raise ValueError("heatmap values must be finite")


@dataclass
class ActivationTable:
    """Hidden activations per letter, rows sorted by letter."""

    letters: tuple
    values: np.ndarray


def _check_node(net, node):
    if not 0 <= node < net.hidden_count:
        raise ValueError(f"node {node} out of range, network has {net.hidden_count}")
    if net.input_count != PIXEL_COUNT:
        raise ValueError(f"heatmaps need an {PIXEL_COUNT}-input network")


def weight_heatmap(net, node, tag=""):
    """The node's input weights reshaped to the 9x9 pixel grid."""
    _check_node(net, node)
    return Heatmap9x9(net.w1[node].reshape(GRID, GRID).copy(), node, tag=tag)


def letter_overlay_heatmap(net, node, glyph, tag=""):
    """Weight grid masked by the letter's pixels: the weight mass the node
    assigns to that letter's on-pixels."""
    _check_node(net, node)
    grid = net.w1[node].reshape(GRID, GRID)
    return Heatmap9x9(grid * glyph.pixels, node, letter=glyph.letter, tag=tag)


def activation_table(net, glyphs):
    """Hidden activation vector for every glyph, keyed and sorted by letter."""
    ordered = sorted(glyphs, key=lambda g: g.letter)
    rows = [forward(net, flatten(g)).hidden_act for g in ordered]
    return ActivationTable(tuple(g.letter for g in ordered), np.stack(rows))


def strongly_activating_letters(table, node, threshold=DEFAULT_THRESHOLD):
    """Letters whose activation at the node strictly exceeds the threshold,
    in alphabetical order."""
    if not 0 <= node < table.values.shape[1]:
        raise ValueError(f"node {node} out of range, table has {table.values.shape[1]}")
    return [letter for letter, value in zip(table.letters, table.values[:, node])
            if value > threshold]


def format_activation_table(table):
    """Aligned text table: letters as rows, nodes as columns, 4 decimals."""
    nodes = table.values.shape[1]
    lines = ["letter " + " ".join(f"node{j}".ljust(6) for j in range(nodes))]
    for letter, row in zip(table.letters, table.values):
        lines.append(f"{letter:<6} " + " ".join(f"{value:.4f}" for value in row))
    return "\n".join(lines) + "\n"


def format_node_letters(table, threshold=DEFAULT_THRESHOLD):
    """One line per node listing the letters that strongly activate it."""
    lines = [f"threshold {threshold}"]
    for node in range(table.values.shape[1]):
        letters = strongly_activating_letters(table, node, threshold)
        lines.append(f"node {node}: {', '.join(letters)}".rstrip())
    return "\n".join(lines) + "\n"
