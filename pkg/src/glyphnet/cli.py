"""Command-line driver: experiment runs, gradient checking, font inspection.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 validation or
tolerance failure.
"""

import argparse
import sys

from . import experiments
from .glyphs import builtin_alphabet, load_font, render_font
from .trainer import GRAD_ABS_FLOOR, GRAD_REL_TOLERANCE

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_VALIDATION = 3


def _add_run_flags(parser, with_noise):
    parser.add_argument("--seed", type=int, default=0, help="run seed (default 0)")
    parser.add_argument("--hidden", type=int, default=6, help="hidden node count (default 6)")
    parser.add_argument("--eta", type=float, default=0.5, help="learning rate (default 0.5)")
    parser.add_argument("--epsilon", type=float, default=0.01,
                        help="SSE stopping threshold (default 0.01)")
    parser.add_argument("--max-epochs", type=int, default=5000,
                        help="epoch limit (default 5000)")
    if with_noise:
        parser.add_argument("--noise", type=float, default=0.1,
                            help="pixel flip probability for the noisy condition (default 0.1)")
    parser.add_argument("--out", default="artifacts", help="artifact directory (default artifacts)")
    parser.add_argument("--font", default=None, help="font file to use instead of the built-in alphabet")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="glyphnet",
        description="Train a small sigmoid network on the 9x9 bitmap alphabet "
                    "and render what its hidden nodes respond to.")
    sub = parser.add_subparsers(dest="command", required=True)

    exp1 = sub.add_parser("exp1", help="letter classifier run with per-node weight heatmaps")
    _add_run_flags(exp1, with_noise=False)

    exp2 = sub.add_parser("exp2", help="feature-set run, clean and noisy, with letter overlays")
    _add_run_flags(exp2, with_noise=True)

    grad = sub.add_parser("gradcheck", help="verify gradients against finite differences")
    grad.add_argument("--seed", type=int, default=0)
    grad.add_argument("--instances", type=int, default=100,
                      help="random instances per network scale (default 100)")

    dump = sub.add_parser("dump-config", help="print the resolved run configuration")
    dump.add_argument("--experiment", choices=("exp1", "exp2"), default="exp1")
    _add_run_flags(dump, with_noise=True)

    font = sub.add_parser("render-font", help="print the alphabet as text art")
    font.add_argument("--font", default=None)
    return parser


def _config(args, experiment, noise_rate):
    return experiments.RunConfig(
        experiment=experiment,
        seed=args.seed,
        hidden_count=args.hidden,
        eta=args.eta,
        epsilon=args.epsilon,
        max_epochs=args.max_epochs,
        noise_rate=noise_rate,
        output_dir=args.out,
        font_path=args.font,
    )


def _dispatch(args):
    if args.command == "exp1":
        exp_dir = experiments.run_experiment1(_config(args, "exp1", 0.0))
        print(f"experiment 1 artifacts written to {exp_dir}")
    elif args.command == "exp2":
        exp_dir = experiments.run_experiment2(_config(args, "exp2", args.noise))
        print(f"experiment 2 artifacts written to {exp_dir}")
    elif args.command == "gradcheck":
        max_rel, max_abs = experiments.run_gradcheck(args.seed, args.instances)
        print(f"instances per scale (2-2-1 and 81-6-10): {args.instances}")
        print(f"max relative error: {max_rel:.3e}")
        print(f"max absolute error below {GRAD_ABS_FLOOR:g} floor: {max_abs:.3e}")
        if max_rel > GRAD_REL_TOLERANCE or max_abs > GRAD_ABS_FLOOR:
            print(f"FAIL: tolerance {GRAD_REL_TOLERANCE:g} violated")
            return EXIT_VALIDATION
        print(f"OK: within tolerance {GRAD_REL_TOLERANCE:g}")
    elif args.command == "dump-config":
        noise = args.noise if args.experiment == "exp2" else 0.0
        sys.stdout.write(experiments.format_config(_config(args, args.experiment, noise)))
    elif args.command == "render-font":
        glyphs = load_font(args.font) if args.font else builtin_alphabet()
        sys.stdout.write(render_font(glyphs))
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return _dispatch(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
