"""Tiny sigmoid network over a 9x9 bitmap alphabet, with heatmap analysis
of what each hidden node learned."""

__version__ = "0.1.0"
