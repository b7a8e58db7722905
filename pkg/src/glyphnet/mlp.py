"""Single-hidden-layer sigmoid network: parameters, forward pass, persistence.

The layout is input -> hidden -> output with full connectivity, explicit
biases, and the same sigmoid slope `alpha` applied at both layers.
"""

from dataclasses import dataclass

import numpy as np

DEFAULT_INPUT_COUNT = 81
INIT_RANGE = 0.5


def sigmoid(x, alpha=1.0):
    """Logistic transfer 1 / (1 + exp(-alpha * x)).

    Computed through exp(-|alpha * x|) so large arguments never overflow.
    Works on scalars and arrays alike.
    """
    z = np.multiply(alpha, np.asarray(x, dtype=np.float64))
    e = np.exp(-np.abs(z))
    out = np.where(z >= 0, 1.0 / (1.0 + e), e / (1.0 + e))
    return float(out) if out.ndim == 0 else out


def sigmoid_derivative(activation, alpha=1.0):
    """Slope of the sigmoid expressed through its own output: alpha*s*(1-s)."""
    return alpha * activation * (1.0 - activation)


@dataclass
class Mlp:
    """Weights and biases of the network.

    w1 is hidden_count x input_count, w2 is output_count x hidden_count,
    so net inputs are w @ previous_activation + bias.
    """

    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray
    alpha: float = 1.0

    def __post_init__(self):
        self.w1 = np.asarray(self.w1, dtype=np.float64)
        self.b1 = np.asarray(self.b1, dtype=np.float64)
        self.w2 = np.asarray(self.w2, dtype=np.float64)
        self.b2 = np.asarray(self.b2, dtype=np.float64)
        hidden, inputs = self.w1.shape
        outputs = self.b2.shape[0]
        if self.b1.shape != (hidden,) or self.w2.shape != (outputs, hidden):
            raise ValueError("network parameter shapes are inconsistent")
        if not (np.isfinite(self.w1).all() and np.isfinite(self.b1).all()
                and np.isfinite(self.w2).all() and np.isfinite(self.b2).all()):
            raise ValueError("network parameters must be finite")
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    @property
    def input_count(self):
        return self.w1.shape[1]

    @property
    def hidden_count(self):
        return self.w1.shape[0]

    @property
    def output_count(self):
        return self.w2.shape[0]

    def copy(self):
        return Mlp(self.w1.copy(), self.b1.copy(), self.w2.copy(), self.b2.copy(), self.alpha)

    def parameters(self):
        """The four parameter arrays, in a fixed order."""
        return (self.w1, self.b1, self.w2, self.b2)


@dataclass
class ForwardTrace:
    """Everything one forward pass produced, pre- and post-activation."""

    input: np.ndarray
    hidden_net: np.ndarray
    hidden_act: np.ndarray
    output_act: np.ndarray


def init_random(hidden_count, output_count, rng, input_count=DEFAULT_INPUT_COUNT, alpha=1.0):
    """Network with every weight and bias drawn uniformly from [-0.5, 0.5].

    Draw order is fixed (w1 row-major, b1, w2 row-major, b2) so the same
    seeded rng always produces the same network.
    """
    if hidden_count < 1 or output_count < 1 or input_count < 1:
        raise ValueError("layer sizes must be positive")
    w1 = rng.uniform(-INIT_RANGE, INIT_RANGE, (hidden_count, input_count))
    b1 = rng.uniform(-INIT_RANGE, INIT_RANGE, hidden_count)
    w2 = rng.uniform(-INIT_RANGE, INIT_RANGE, (output_count, hidden_count))
    b2 = rng.uniform(-INIT_RANGE, INIT_RANGE, output_count)
    return Mlp(w1, b1, w2, b2, alpha)


def forward(net, values):
    """Run one input through the network, keeping all activations."""
    values = np.asarray(values, dtype=np.float64)
    if values.shape != (net.input_count,):
        raise ValueError(
            f"input has shape {values.shape}, network expects ({net.input_count},)")
    hidden_net = net.w1 @ values + net.b1
    hidden_act = sigmoid(hidden_net, net.alpha)
    output_net = net.w2 @ hidden_act + net.b2
    output_act = sigmoid(output_net, net.alpha)
    return ForwardTrace(values, hidden_net, hidden_act, output_act)


def format_weights(net):
    """Text form of a network: header then w1 rows, b1, w2 rows, b2.

    Numbers use repr precision, so parse_weights(format_weights(n)) is
    bit-faithful.
    """
    def row(vector):
        return " ".join(repr(float(v)) for v in vector)

    lines = [f"{net.input_count} {net.hidden_count} {net.output_count} {net.alpha!r}"]
    lines.extend(row(r) for r in net.w1)
    lines.append(row(net.b1))
    lines.extend(row(r) for r in net.w2)
    lines.append(row(net.b2))
    return "\n".join(lines) + "\n"


def parse_weights(text):
    """Parse the format_weights text form back into a network."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("weights text is empty")
    header = lines[0].split()
    if len(header) != 4:
        raise ValueError("weights header must be 'inputs hidden outputs alpha'")
    inputs, hidden, outputs = (int(v) for v in header[:3])
    alpha = float(header[3])
    expected = hidden + 1 + outputs + 1
    if len(lines) - 1 != expected:
        raise ValueError(f"expected {expected} parameter rows, got {len(lines) - 1}")

    def parse_row(line, width, what):
        row = np.array([float(v) for v in line.split()], dtype=np.float64)
        if row.shape != (width,):
            raise ValueError(f"{what} row has {row.shape[0]} values, expected {width}")
        return row

    body = lines[1:]
    w1 = np.stack([parse_row(body[i], inputs, "w1") for i in range(hidden)])
    b1 = parse_row(body[hidden], hidden, "b1")
    w2 = np.stack([parse_row(body[hidden + 1 + i], hidden, "w2") for i in range(outputs)])
    b2 = parse_row(body[hidden + 1 + outputs], outputs, "b2")
    return Mlp(w1, b1, w2, b2, alpha)


def save_weights(net, path):
    with open(path, "w", encoding="ascii") as handle:
        handle.write(format_weights(net))


def load_weights(path):
    with open(path, "r", encoding="ascii") as handle:
        return parse_weights(handle.read())
