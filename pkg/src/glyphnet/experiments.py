"""End-to-end experiment runners that write deterministic artifact trees.

Every run derives its randomness from the configured seed through fixed,
purpose-tagged streams (init, clean training, noisy training, noise for
evaluation), so identical configurations reproduce every file byte for byte.
A manifest with content hashes is written last.
"""

import hashlib
import shutil
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analysis import (activation_table, format_activation_table, format_node_letters,
                       letter_overlay_heatmap, weight_heatmap)
from .featuresets import builtin_feature_sets, class_of, one_hot, targets_experiment1, \
    targets_experiment2
from .glyphs import apply_noise, builtin_alphabet, flatten, load_font
from .mlp import format_weights, init_random
from .render import render_montage, render_ppm
from .trainer import TrainConfig, accuracy, format_sse_curve, gradient_discrepancy, train

CELL_SIZE = 8
MONTAGE_GAP = 2
MANIFEST_NAME = "manifest.txt"

# rng stream tags, paired with the run seed so each purpose gets its own stream
_INIT, _TRAIN_CLEAN, _TRAIN_NOISY, _EVAL_NOISE = range(4)


@dataclass
class RunConfig:
    experiment: str
    seed: int = 0
    hidden_count: int = 6
    eta: float = 0.5
    epsilon: float = 0.01
    max_epochs: int = 5000
    noise_rate: float = 0.1
    output_dir: str = "artifacts"
    font_path: str = None

    def __post_init__(self):
        if self.experiment not in ("exp1", "exp2"):
            raise ValueError(f"experiment must be exp1 or exp2, got {self.experiment!r}")
        if self.hidden_count < 1:
            raise ValueError(f"hidden_count must be positive, got {self.hidden_count}")
        # delegates range checks on eta, epsilon, max_epochs, noise_rate
        self.train_config(self.noise_rate)

    def train_config(self, noise_rate):
        return TrainConfig(eta=self.eta, max_epochs=self.max_epochs, epsilon=self.epsilon,
                           seed=self.seed, noise_rate=noise_rate)


def _stream(seed, tag):
    return np.random.default_rng([seed, tag])


def _sha256(data):
    return hashlib.sha256(data).hexdigest()


def _fresh_dir(path):
    if path.exists():
        shutil.rmtree(path)
    path.mkdir(parents=True)
    return path


def _write_text(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="ascii")


def _write_bytes(path, data):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)


def _load_glyphs(config):
    return load_font(config.font_path) if config.font_path else builtin_alphabet()


def write_manifest(exp_dir):
    """Hash every artifact under exp_dir into manifest.txt (sha256sum layout)."""
    entries = []
    for path in exp_dir.rglob("*"):
        if path.is_file() and path.name != MANIFEST_NAME:
            rel = path.relative_to(exp_dir).as_posix()
            entries.append((rel, _sha256(path.read_bytes())))
    entries.sort()
    lines = [f"{digest}  {rel}" for rel, digest in entries]
    _write_text(exp_dir / MANIFEST_NAME, "\n".join(lines) + "\n")


def run_experiment1(config):
    """Train the 81-H-26 letter classifier and write weight-heatmap artifacts.

    The experiment directory ends up with the trained weights, the SSE
    curve, the per-letter hidden activation table, the letters that strongly
    activate each node, one heatmap image per node plus their montage, and
    the manifest.
    """
    glyphs = _load_glyphs(config)
    dataset = targets_experiment1(glyphs)
    net = init_random(config.hidden_count, 26, _stream(config.seed, _INIT))
    report = train(net, dataset, config.train_config(0.0), _stream(config.seed, _TRAIN_CLEAN))

    exp_dir = _fresh_dir(Path(config.output_dir) / "exp1")
    _write_text(exp_dir / "weights.txt", format_weights(net))
    _write_text(exp_dir / "sse_curve.txt", format_sse_curve(report))
    table = activation_table(net, glyphs)
    _write_text(exp_dir / "activations.txt", format_activation_table(table))
    _write_text(exp_dir / "node_letters.txt", format_node_letters(table))

    heatmaps = [weight_heatmap(net, node, tag="exp1") for node in range(config.hidden_count)]
    for node, heatmap in enumerate(heatmaps):
        _write_bytes(exp_dir / f"node{node}.ppm", render_ppm(heatmap, cell_size=CELL_SIZE))
    _write_bytes(exp_dir / "montage_nodes.ppm",
                 render_montage(heatmaps, cell_size=CELL_SIZE, gap=MONTAGE_GAP))
    write_manifest(exp_dir)
    return exp_dir


def _noise_label(rate):
    return f"noise_{int(round(rate * 100))}"


def run_experiment2(config):
    """Train the 81-H-10 feature-set classifier twice from one initialization,
    clean and with pixel noise, and write per-letter overlay artifacts.

    Both conditions record the hash of the shared initial weights. Each
    feature set gets one overlay image per (letter, node) pair and a per
    letter montage across nodes. Clean and noisy-input accuracy of both
    trained networks goes into accuracy.txt.
    """
    glyphs = _load_glyphs(config)
    table = builtin_feature_sets()
    dataset = targets_experiment2(glyphs, table)
    glyph_by_letter = {g.letter: g for g in glyphs}
    base = init_random(config.hidden_count, table.class_count(), _stream(config.seed, _INIT))
    init_hash = _sha256(format_weights(base).encode("ascii"))

    exp_dir = _fresh_dir(Path(config.output_dir) / "exp2")
    conditions = (("no_noise", 0.0, _TRAIN_CLEAN),
                  (_noise_label(config.noise_rate), config.noise_rate, _TRAIN_NOISY))
    trained = {}
    for label, rate, stream_tag in conditions:
        net = base.copy()
        report = train(net, dataset, config.train_config(rate), _stream(config.seed, stream_tag))
        trained[label] = net
        cond_dir = exp_dir / label
        _write_text(cond_dir / "init_hash.txt", init_hash + "\n")
        _write_text(cond_dir / "weights.txt", format_weights(net))
        _write_text(cond_dir / "sse_curve.txt", format_sse_curve(report))
        for set_label, letters in table.entries:
            set_dir = cond_dir / set_label
            for letter in letters:
                overlays = [letter_overlay_heatmap(net, node, glyph_by_letter[letter], tag=label)
                            for node in range(config.hidden_count)]
                for node, overlay in enumerate(overlays):
                    _write_bytes(set_dir / f"{letter}_node{node}.ppm",
                                 render_ppm(overlay, cell_size=CELL_SIZE))
                _write_bytes(set_dir / f"montage_{letter}.ppm",
                             render_montage(overlays, cell_size=CELL_SIZE, gap=MONTAGE_GAP))

    # one shared noisy copy of the dataset keeps the comparison fair
    eval_rng = _stream(config.seed, _EVAL_NOISE)
    noisy_eval = [(apply_noise(x, config.noise_rate, eval_rng), t) for x, t in dataset]
    lines = ["condition eval accuracy"]
    for label, _, _ in conditions:
        lines.append(f"{label} clean {accuracy(trained[label], dataset)!r}")
        lines.append(f"{label} noisy {accuracy(trained[label], noisy_eval)!r}")
    _write_text(exp_dir / "accuracy.txt", "\n".join(lines) + "\n")
    write_manifest(exp_dir)
    return exp_dir


def run_gradcheck(seed=0, instances=100, step=1e-5):
    """Compare delta-rule gradients against finite differences.

    Each instance draws a fresh random 2-2-1 network on a random binary
    pattern and a fresh 81-6-10 network on a real glyph with its feature-set
    target. Returns the worst (relative, small-gradient absolute) errors.
    """
    if instances < 1:
        raise ValueError(f"instances must be at least 1, got {instances}")
    rng = np.random.default_rng(seed)
    glyphs = builtin_alphabet()
    table = builtin_feature_sets()
    max_rel = 0.0
    max_abs = 0.0
    for _ in range(instances):
        small = init_random(2, 1, rng, input_count=2)
        values = rng.integers(0, 2, size=2).astype(np.float64)
        target = rng.integers(0, 2, size=1).astype(np.float64)
        rel, abs_err = gradient_discrepancy(small, values, target, step)
        max_rel = max(max_rel, rel)
        max_abs = max(max_abs, abs_err)

        glyph = glyphs[int(rng.integers(0, len(glyphs)))]
        large = init_random(6, 10, rng)
        target = one_hot(class_of(table, glyph.letter), table.class_count())
        rel, abs_err = gradient_discrepancy(large, flatten(glyph), target, step)
        max_rel = max(max_rel, rel)
        max_abs = max(max_abs, abs_err)
    return max_rel, max_abs


def format_config(config):
    """Resolved configuration as key=value lines, one field per line."""
    fields = (
        ("experiment", config.experiment),
        ("seed", config.seed),
        ("hidden_count", config.hidden_count),
        ("eta", config.eta),
        ("epsilon", config.epsilon),
        ("max_epochs", config.max_epochs),
        ("noise_rate", config.noise_rate),
        ("output_dir", config.output_dir),
        ("font_path", config.font_path if config.font_path else ""),
    )
    return "\n".join(f"{name}={value}" for name, value in fields) + "\n"
