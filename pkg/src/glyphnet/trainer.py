"""Online gradient-descent training with SSE stopping, plus an independent
finite-difference gradient oracle for verification."""

from dataclasses import dataclass, field

import numpy as np

from .glyphs import apply_noise
from .mlp import forward, sigmoid, sigmoid_derivative

GRAD_REL_TOLERANCE = 1e-6
GRAD_ABS_FLOOR = 1e-8


@dataclass
class TrainConfig:
    eta: float = 0.5
    max_epochs: int = 5000
    epsilon: float = 0.01
    seed: int = 0
    noise_rate: float = 0.0
    shuffle: bool = True

    def __post_init__(self):
        if self.eta <= 0:
            raise ValueError(f"eta must be positive, got {self.eta}")
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be nonnegative, got {self.epsilon}")
        if self.max_epochs < 1:
            raise ValueError(f"max_epochs must be at least 1, got {self.max_epochs}")
        if not 0.0 <= self.noise_rate <= 1.0:
            raise ValueError(f"noise_rate must be in [0, 1], got {self.noise_rate}")


@dataclass
class Gradients:
    """Error gradients with the same shapes as the network parameters."""

    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray

    def parameters(self):
        return (self.w1, self.b1, self.w2, self.b2)


@dataclass
class TrainReport:
    epochs_run: int
    converged: bool
    sse_curve: list = field(repr=False)
    final_sse: float = 0.0
    final_accuracy: float = 0.0


def _as_pairs(net, dataset):
    if len(dataset) == 0:
        raise ValueError("dataset must not be empty")
    pairs = [(np.asarray(x, dtype=np.float64), np.asarray(t, dtype=np.float64))
             for x, t in dataset]
    for x, t in pairs:
        if x.shape != (net.input_count,) or t.shape != (net.output_count,):
            raise ValueError(
                f"pattern shapes {x.shape}/{t.shape} do not match network "
                f"({net.input_count} inputs, {net.output_count} outputs)")
    return pairs


def sse(net, dataset):
    """Total sum of squared errors over the dataset, no averaging, no 1/2."""
    pairs = _as_pairs(net, dataset)
    inputs = np.stack([x for x, _ in pairs])
    targets = np.stack([t for _, t in pairs])
    hidden = sigmoid(inputs @ net.w1.T + net.b1, net.alpha)
    outputs = sigmoid(hidden @ net.w2.T + net.b2, net.alpha)
    return float(((targets - outputs) ** 2).sum())


def _pattern_sse(net, values, target):
    return float(((target - forward(net, values).output_act) ** 2).sum())


def backprop_gradients(net, values, target):
    """Gradients of one pattern's squared error via the delta rule.

    Output deltas are -2*(t - o) * alpha*o*(1-o); hidden deltas sum those
    back through w2 and apply the hidden sigmoid slope.
    """
    target = np.asarray(target, dtype=np.float64)
    if target.shape != (net.output_count,):
        raise ValueError(
            f"target has shape {target.shape}, network expects ({net.output_count},)")
    trace = forward(net, values)
    delta_out = -2.0 * (target - trace.output_act) * sigmoid_derivative(
        trace.output_act, net.alpha)
    delta_hidden = (net.w2.T @ delta_out) * sigmoid_derivative(trace.hidden_act, net.alpha)
    return Gradients(
        w1=np.outer(delta_hidden, trace.input),
        b1=delta_hidden,
        w2=np.outer(delta_out, trace.hidden_act),
        b2=delta_out,
    )


def finite_diff_gradients(net, values, target, step=1e-5):
    """Central-difference gradient estimate, one parameter at a time.

    Independent of the delta-rule path: it only evaluates the error at
    perturbed parameter values.
    """
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    values = np.asarray(values, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    probe = net.copy()
    grads = Gradients(*(np.zeros_like(p) for p in probe.parameters()))
    for param, grad in zip(probe.parameters(), grads.parameters()):
        flat_param = param.reshape(-1)
        flat_grad = grad.reshape(-1)
        for i in range(flat_param.size):
            original = flat_param[i]
            flat_param[i] = original + step
            error_plus = _pattern_sse(probe, values, target)
            flat_param[i] = original - step
            error_minus = _pattern_sse(probe, values, target)
            flat_param[i] = original
            flat_grad[i] = (error_plus - error_minus) / (2.0 * step)
    return grads


def gradient_discrepancy(net, values, target, step=1e-5, abs_floor=GRAD_ABS_FLOOR):
    """Worst disagreement between analytic and finite-difference gradients.

    Returns (max_relative, max_absolute_small): relative error
    |a - f| / max(|a|, |f|) over parameters whose finite-difference magnitude
    reaches `abs_floor`, and plain |a - f| over the rest.
    """
    analytic = backprop_gradients(net, values, target)
    estimate = finite_diff_gradients(net, values, target, step)
    max_rel = 0.0
    max_abs = 0.0
    for a, f in zip(analytic.parameters(), estimate.parameters()):
        a = a.reshape(-1)
        f = f.reshape(-1)
        small = np.abs(f) < abs_floor
        if small.any():
            max_abs = max(max_abs, float(np.abs(a[small] - f[small]).max()))
        if (~small).any():
            diff = np.abs(a[~small] - f[~small])
            denom = np.maximum(np.abs(a[~small]), np.abs(f[~small]))
            max_rel = max(max_rel, float((diff / denom).max()))
    return max_rel, max_abs


def train(net, dataset, config, rng):
    """Online training: update after every pattern, stop once the clean-data
    SSE drops to config.epsilon or max_epochs is reached.

    Pattern order reshuffles every epoch from `rng` when config.shuffle is
    set. With a positive noise_rate every presentation gets fresh pixel
    noise (also drawn from `rng`), but the recorded SSE curve is always
    measured on the clean dataset. The network is updated in place.
    """
    pairs = _as_pairs(net, dataset)
    eta = config.eta
    count = len(pairs)
    curve = []
    for _ in range(config.max_epochs):
        order = rng.permutation(count) if config.shuffle else np.arange(count)
        for i in order:
            values, target = pairs[i]
            if config.noise_rate > 0.0:
                values = apply_noise(values, config.noise_rate, rng)
            grads = backprop_gradients(net, values, target)
            net.w1 -= eta * grads.w1
            net.b1 -= eta * grads.b1
            net.w2 -= eta * grads.w2
            net.b2 -= eta * grads.b2
        total = sse(net, pairs)
        curve.append(total)
        if total <= config.epsilon:
            break
    final = curve[-1]
    return TrainReport(
        epochs_run=len(curve),
        converged=final <= config.epsilon,
        sse_curve=curve,
        final_sse=final,
        final_accuracy=accuracy(net, pairs),
    )


def classify(net, values):
    """Index of the strongest output; ties go to the lowest index."""
    return int(np.argmax(forward(net, values).output_act))


def accuracy(net, dataset):
    """Fraction of patterns whose classification matches the target's hot index."""
    pairs = _as_pairs(net, dataset)
    hits = sum(1 for x, t in pairs if classify(net, x) == int(np.argmax(t)))
    return hits / len(pairs)


def format_sse_curve(report):
    """Plain-text (epoch, SSE) table for plotting and regression checks."""
    lines = ["epoch sse"]
    lines.extend(f"{epoch} {value!r}" for epoch, value in enumerate(report.sse_curve, start=1))
    return "\n".join(lines) + "\n"
