import math

import numpy as np
import pytest

from glyphnet.mlp import (Mlp, forward, format_weights, init_random, load_weights,
                          parse_weights, save_weights, sigmoid, sigmoid_derivative)


def zero_net(inputs=2, hidden=2, outputs=1):
    return Mlp(np.zeros((hidden, inputs)), np.zeros(hidden),
               np.zeros((outputs, hidden)), np.zeros(outputs))


def test_sigmoid_midpoint():
    assert sigmoid(0.0, 1.0) == 0.5


def test_sigmoid_closed_form_value():
    # 1 / (1 + exp(-ln 3)) = 1 / (1 + 1/3) = 0.75
    assert abs(sigmoid(math.log(3.0), 1.0) - 0.75) <= 1e-12


def test_sigmoid_symmetry_identity():
    for x in np.linspace(-8, 8, 33):
        for alpha in (0.5, 1.0, 2.0):
            assert abs(sigmoid(-x, alpha) - (1.0 - sigmoid(x, alpha))) <= 1e-12


def test_sigmoid_is_strictly_increasing():
    xs = np.linspace(-20, 20, 201)
    values = sigmoid(xs, 1.0)
    assert (np.diff(values) > 0).all()


def test_sigmoid_stable_for_large_arguments():
    with np.errstate(over="raise", invalid="raise"):
        for x in (-500.0, -100.0, 100.0, 500.0):
            value = sigmoid(x, 1.0)
            assert math.isfinite(value)
            assert 0.0 <= value <= 1.0
    assert sigmoid(-500.0, 1.0) > 0.0


def test_sigmoid_derivative_matches_finite_differences():
    step = 1e-5
    for alpha in (1.0, 2.5):
        for x in (-4.0, -1.0, 0.0, 1.0, 4.0):
            analytic = sigmoid_derivative(sigmoid(x, alpha), alpha)
            estimate = (sigmoid(x + step, alpha) - sigmoid(x - step, alpha)) / (2 * step)
            assert abs(analytic - estimate) / max(abs(estimate), 1e-12) <= 1e-6


def test_init_same_seed_is_bit_identical():
    a = init_random(6, 26, np.random.default_rng(9))
    b = init_random(6, 26, np.random.default_rng(9))
    for pa, pb in zip(a.parameters(), b.parameters()):
        assert (pa == pb).all()


def test_init_range_and_shapes():
    net = init_random(6, 10, np.random.default_rng(4))
    assert net.w1.shape == (6, 81)
    assert net.b1.shape == (6,)
    assert net.w2.shape == (10, 6)
    assert net.b2.shape == (10,)
    for param in net.parameters():
        assert (param >= -0.5).all() and (param <= 0.5).all()


def test_init_different_seeds_differ():
    a = init_random(6, 10, np.random.default_rng(1))
    b = init_random(6, 10, np.random.default_rng(2))
    assert any((pa != pb).any() for pa, pb in zip(a.parameters(), b.parameters()))


def test_init_rejects_bad_sizes():
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        init_random(0, 10, rng)
    with pytest.raises(ValueError):
        init_random(6, 0, rng)


def test_forward_zero_network_gives_half_everywhere():
    net = zero_net(81, 6, 26)
    trace = forward(net, np.zeros(81))
    assert (trace.hidden_act == 0.5).all()
    assert (trace.output_act == 0.5).all()


def test_forward_hand_computed_network():
    net = Mlp(w1=[[1.0, 0.0], [0.0, 1.0]], b1=[0.0, 0.0], w2=[[1.0, 1.0]], b2=[0.0])
    trace = forward(net, [0.0, 0.0])
    # hidden nets are 0 so both hidden activations are 0.5; output net is 1.0
    assert (trace.hidden_act == 0.5).all()
    expected = 1.0 / (1.0 + math.exp(-1.0))
    assert abs(trace.output_act[0] - expected) <= 1e-12


def test_forward_activations_strictly_inside_unit_interval():
    rng = np.random.default_rng(11)
    for _ in range(20):
        net = init_random(6, 10, rng)
        values = rng.integers(0, 2, size=81).astype(float)
        trace = forward(net, values)
        assert (trace.hidden_act > 0).all() and (trace.hidden_act < 1).all()
        assert (trace.output_act > 0).all() and (trace.output_act < 1).all()


def test_alpha_scaling_preserves_argmax_for_fixed_nets():
    # zero first layer pins every hidden activation at 0.5 regardless of
    # alpha, so the output nets stay fixed and only the monotone transfer
    # scales; the strongest output must not move
    rng = np.random.default_rng(12)
    w2 = rng.uniform(-0.5, 0.5, (5, 4))
    b2 = rng.uniform(-0.5, 0.5, 5)
    values = rng.integers(0, 2, size=7).astype(float)
    outputs = {}
    for alpha in (0.5, 1.0, 3.0):
        net = Mlp(np.zeros((4, 7)), np.zeros(4), w2, b2, alpha=alpha)
        outputs[alpha] = forward(net, values).output_act
    nets = w2 @ np.full(4, 0.5) + b2
    assert len(np.unique(nets)) == nets.size
    winners = {np.argmax(out) for out in outputs.values()}
    assert winners == {np.argmax(nets)}


def test_forward_rejects_wrong_input_length():
    net = zero_net(81, 6, 26)
    with pytest.raises(ValueError):
        forward(net, np.zeros(80))


def test_mlp_rejects_inconsistent_shapes():
    with pytest.raises(ValueError):
        Mlp(np.zeros((2, 3)), np.zeros(2), np.zeros((1, 4)), np.zeros(1))


def test_mlp_rejects_nonfinite_parameters():
    with pytest.raises(ValueError):
        Mlp(np.full((2, 2), np.nan), np.zeros(2), np.zeros((1, 2)), np.zeros(1))


def test_mlp_rejects_nonpositive_alpha():
    with pytest.raises(ValueError):
        zero = np.zeros((1, 1))
        Mlp(zero, np.zeros(1), zero, np.zeros(1), alpha=0.0)


def test_weights_text_round_trip_is_bit_faithful():
    net = init_random(6, 10, np.random.default_rng(77))
    restored = parse_weights(format_weights(net))
    assert restored.alpha == net.alpha
    for original, loaded in zip(net.parameters(), restored.parameters()):
        assert (original == loaded).all()


def test_weights_file_round_trip(tmp_path):
    net = init_random(3, 4, np.random.default_rng(5), input_count=9, alpha=2.0)
    path = tmp_path / "weights.txt"
    save_weights(net, path)
    restored = load_weights(path)
    assert restored.alpha == 2.0
    for original, loaded in zip(net.parameters(), restored.parameters()):
        assert (original == loaded).all()


def test_parse_weights_validates_shape():
    net = init_random(2, 2, np.random.default_rng(6), input_count=3)
    lines = format_weights(net).splitlines()
    lines[1] = "0.0 0.0"  # w1 row with the wrong width
    with pytest.raises(ValueError):
        parse_weights("\n".join(lines))


def test_parse_weights_validates_row_count():
    net = init_random(2, 2, np.random.default_rng(6), input_count=3)
    lines = format_weights(net).splitlines()
    with pytest.raises(ValueError):
        parse_weights("\n".join(lines[:-1]))


def test_parse_weights_rejects_bad_header():
    with pytest.raises(ValueError):
        parse_weights("2 2\n0 0\n")
