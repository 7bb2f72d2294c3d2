"""Command line entry point: ``mbgame run|threshold|play|replay|boxgame``.

Exit codes: 0 success, 2 strategy fault or corrupt transcript, 3 configuration
error (bad arguments, unknown strategy or pattern), 1 for I/O errors and
failed threshold brackets.
"""

import argparse
import sys

from .boxgame import POLICIES, BoxState, criterion_holds, play_box_game
from .engine import GameConfig, play_game, read_transcript, replay
from .errors import (
    CorruptTranscript,
    InvalidConfig,
    InvalidPattern,
    MonotoneAssumptionFailed,
    OracleTooLarge,
    PatternTooLarge,
    PolicyFault,
    StrategyFault,
    UnknownStrategy,
)
from .experiments import ExperimentSpec, bias_sweep, emit, parse_biases, threshold_estimate
from .strategies.monitors import parse_monitors
from .strategies.registry import make_strategy

EXIT_OK, EXIT_FAULT, EXIT_CONFIG = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _game_args(p):
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--maker", default="random")
    p.add_argument("--breaker", default="random")
    p.add_argument("--target", default="none")
    p.add_argument("--monitors", default="")
    p.add_argument("--no-early-stop", action="store_true")


def _spec(args, biases):
    return ExperimentSpec(
        n=args.n,
        biases=biases,
        maker=args.maker,
        breaker=args.breaker,
        target=args.target,
        games=args.games,
        seed=args.seed,
        monitors=[m for m in args.monitors.split(",") if m.strip()],
        early_stop=not args.no_early_stop,
        threads=args.threads,
    )


def cmd_run(args):
    spec = _spec(args, parse_biases(args.bias))
    result = bias_sweep(spec)
    text = emit(result, args.format, args.out)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    for flag in result.diagnostics:
        print(f"warning: {flag}", file=sys.stderr)
    return EXIT_OK


def cmd_threshold(args):
    spec = _spec(args, [args.lo, args.hi])
    try:
        est = threshold_estimate(spec, args.lo, args.hi, args.target_rate, args.resolution)
    except MonotoneAssumptionFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"estimate {est.estimate:g} bracket [{est.lo}, {est.hi}] rates {est.rate_lo:.6f} {est.rate_hi:.6f}")
    for p in est.evaluations:
        print(f"  b={p.bias} wins={p.wins}/{p.games} rate={p.win_rate:.6f}")
    return EXIT_OK


def cmd_play(args):
    config = GameConfig(args.n, args.b, not args.no_early_stop, args.target)
    tr = play_game(
        config,
        make_strategy(args.maker, "maker"),
        make_strategy(args.breaker, "breaker"),
        parse_monitors(args.monitors),
        seed=args.seed,
    )
    if args.transcript:
        tr.save(args.transcript)
    when = "end" if tr.decision_round is None else f"round {tr.decision_round}"
    print(f"winner {tr.winner} ({when}), Maker edges {len(tr.maker_edges)}, padded rounds {len(tr.padded_rounds)}")
    for name, rep in tr.monitor_reports.items():
        print(f"  {name}: {rep['violations']} violations")
    return EXIT_OK


def cmd_replay(args):
    tr = read_transcript(args.transcript)
    board = replay(tr)
    print(
        f"ok n={board.n} b={tr.b} free={board.free_count} maker={board.maker_count} "
        f"breaker={board.breaker_count} winner={tr.winner}"
    )
    return EXIT_OK


def cmd_boxgame(args):
    try:
        boxes = [int(x) for x in args.boxes.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidConfig(f"bad --boxes {args.boxes!r}") from exc
    state = BoxState(boxes, args.m, args.variant)
    print(f"criterion {'holds' if criterion_holds(state) else 'fails'}")
    outcome = play_box_game(state, POLICIES[args.maker], rounds=args.rounds)
    for step in outcome.trace:
        reply = "-" if step["reply"] is None else step["reply"]
        print(f"round {step['round']}: remove {step['removal']} reply {reply} -> {step['boxes']}")
    print(f"outcome {outcome.winner}" + (f" round {outcome.round}" if outcome.round is not None else ""))
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="mbgame", description="Biased Maker-Breaker games on K_n")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="win rates over a list or range of biases")
    _game_args(p)
    p.add_argument("--bias", required=True, help="int, comma list, or inclusive range a:b:step")
    p.add_argument("--games", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None, help="worker processes (default: all cores)")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("threshold", help="bisect for the bias where the win rate crosses a level")
    _game_args(p)
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--resolution", type=int, default=1)
    p.add_argument("--target-rate", type=float, default=0.5)
    p.add_argument("--games", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("play", help="play one game and optionally save its transcript")
    _game_args(p)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--transcript", default=None)
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("replay", help="re-check a saved transcript")
    p.add_argument("transcript")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("boxgame", help="fewest-coins BoxBreaker against a removal policy")
    p.add_argument("--boxes", required=True, help="comma separated coin counts")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--variant", choices=("remove", "putback"), default="remove")
    p.add_argument("--maker", choices=sorted(POLICIES), default="greedy")
    p.add_argument("--rounds", type=int, default=1000)
    p.set_defaults(func=cmd_boxgame)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (StrategyFault, CorruptTranscript, PolicyFault) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAULT
    except (InvalidConfig, InvalidPattern, UnknownStrategy, PatternTooLarge, OracleTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
