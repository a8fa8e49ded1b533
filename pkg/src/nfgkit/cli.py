"""Command-line interface.

One subcommand per analysis: info, solve, pure-nash, verify, zerosum-value,
fragility, coop-gain, dynamics. Games come from an NFG-lite file (--game)
or the builtin catalog (--builtin, parameterized with repeatable --param
K=V). Human-readable text by default; --json emits a single-line run
report with sorted keys, byte-identical for identical inputs and seed.

Exit codes: 0 success, 1 domain failure (no equilibrium within tolerance,
profile fails verification, game not zero-sum, budget exhausted), 2 usage,
parse, or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .catalog import builtin_game, builtin_names
from .dynamics import c1_walk, c2_walk
from .gamefile import GameFormatError, format_number, load_game
from .model import (
    Game,
    GameError,
    MixedProfile,
    PureProfile,
    embed_pure,
    mixed_profile,
    payoff,
)
from .simplex import LpError
from .solvers import (
    EquilibriumReport,
    SolveConfig,
    SolverError,
    enumerate_pure_nash,
    nash_residual,
    solve_nash,
    zero_sum_value,
)
from .stability import NotAnEquilibriumError, classify_equilibrium, cooperation_gain

ZERO_SUM_TOL = 1e-12


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be in [0, 2^64) (got {text})")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument("--game", metavar="PATH", help="NFG-lite game file")
    source.add_argument(
        "--builtin",
        metavar="NAME",
        help=f"builtin game: {', '.join(builtin_names())}",
    )
    common.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="K=V",
        help="builtin parameter; value parsed as JSON, else kept as a string"
        " (repeatable)",
    )
    common.add_argument(
        "--tol", type=float, default=1e-6, help="residual tolerance (default 1e-6)"
    )
    common.add_argument(
        "--seed", type=_u64, default=0, help="seed for randomized stages (default 0)"
    )
    common.add_argument(
        "--json", action="store_true", dest="as_json", help="emit a JSON run report"
    )

    parser = argparse.ArgumentParser(
        prog="nfgkit",
        description="Analyze finite normal-form games: equilibria, zero-sum"
        " values, coalition fragility, and deviation dynamics.",
    )
    parser.add_argument(
        "--version", action="version", version=f"nfgkit {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("info", parents=[common], help="game shape and metadata")
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("solve", parents=[common], help="find one Nash equilibrium")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser(
        "pure-nash", parents=[common], help="enumerate all pure Nash equilibria"
    )
    p.set_defaults(func=_cmd_pure_nash)

    p = sub.add_parser(
        "verify", parents=[common], help="check whether a profile is an equilibrium"
    )
    p.add_argument(
        "--profile",
        required=True,
        metavar="SPEC",
        help="pure profile as 1-based indices '2,2', or mixed weights"
        " '0.5,0.5/0.5,0.5' (players separated by '/')",
    )
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser(
        "zerosum-value",
        parents=[common],
        help="value and optimal strategies of a 2-player zero-sum game",
    )
    p.set_defaults(func=_cmd_zerosum_value)

    p = sub.add_parser(
        "fragility",
        parents=[common],
        help="solve, then classify the equilibrium against coalition deviations",
    )
    p.add_argument(
        "--kmax", type=int, default=2, help="largest coalition size to check (default 2)"
    )
    p.set_defaults(func=_cmd_fragility)

    p = sub.add_parser(
        "coop-gain",
        parents=[common],
        help="solve, then list pure profiles Pareto-dominating the equilibrium",
    )
    p.set_defaults(func=_cmd_coop_gain)

    p = sub.add_parser(
        "dynamics", parents=[common], help="run a deviation walk from a pure profile"
    )
    p.add_argument(
        "--regime",
        required=True,
        choices=("c1", "c2"),
        help="c1: single-player best response; c2: coalition deviations",
    )
    p.add_argument(
        "--start", required=True, metavar="INDICES", help="start profile, e.g. '1,1'"
    )
    p.add_argument(
        "--kmax",
        type=int,
        default=None,
        help="largest coalition size for c2 (default 2)",
    )
    p.add_argument(
        "--steps",
        type=int,
        default=10_000,
        help="walk budget: sweeps for c1, steps for c2 (default 10000)",
    )
    p.set_defaults(func=_cmd_dynamics)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        game = _load_game(args)
        return args.func(game, args)
    except NotAnEquilibriumError as exc:
        return _fail(exc, 1)
    except (SolverError, LpError) as exc:
        return _fail(exc, 1)
    except (GameError, GameFormatError) as exc:
        return _fail(exc, 2)
    except OSError as exc:
        return _fail(exc, 2)


def entrypoint() -> None:
    sys.exit(main())


def _fail(exc: Exception, code: int) -> int:
    print(f"error: {exc}", file=sys.stderr)
    return code


def _load_game(args: argparse.Namespace) -> Game:
    params: dict = {}
    for raw in args.param:
        key, sep, value = raw.partition("=")
        if not sep or not key:
            raise GameError(f"--param expects K=V (got {raw!r})")
        try:
            params[key] = json.loads(value)
        except json.JSONDecodeError:
            params[key] = value
    if args.builtin is None:
        if params:
            raise GameError("--param is only valid with --builtin")
        args.run_params = {}
        return load_game(args.game)
    if args.builtin == "random":
        params.setdefault("seed", args.seed)
    args.run_params = params
    return builtin_game(args.builtin, params)


def _inputs(args: argparse.Namespace, **extra) -> dict:
    if args.builtin is not None:
        source = {"source": "builtin", "name": args.builtin, "params": args.run_params}
    else:
        source = {"source": "file", "path": args.game}
    out = {"game": source, "tol": args.tol}
    out.update(extra)
    return out


def _emit(
    args: argparse.Namespace,
    command: str,
    inputs: dict,
    results: dict,
    lines: list[str],
) -> None:
    if args.as_json:
        report = {
            "tool": "nfgkit",
            "version": __version__,
            "command": command,
            "inputs": inputs,
            "seed": args.seed,
            "results": results,
        }
        print(json.dumps(report, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _fmt(value: float) -> str:
    return format_number(value)


def _fmt_weights(weights: Sequence[float]) -> str:
    return " ".join(_fmt(w) for w in weights)


def _state_str(game: Game, profile: PureProfile) -> str:
    parts = []
    for i, strat in enumerate(profile):
        label = None
        if game.labels is not None and game.labels[i] is not None:
            label = game.labels[i][strat - 1]
        parts.append(label if label else str(strat))
    return "(" + ",".join(parts) + ")"


def _parse_pure(game: Game, text: str) -> PureProfile:
    try:
        indices = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise GameError(
            f"expected comma-separated strategy indices (got {text!r})"
        ) from None
    game.check_profile(indices)
    return indices


def _parse_profile(game: Game, text: str) -> MixedProfile:
    if "/" not in text:
        return embed_pure(game, _parse_pure(game, text))
    sections = text.split("/")
    weights = []
    for section in sections:
        try:
            weights.append([float(tok) for tok in section.split(",")])
        except ValueError:
            raise GameError(
                f"expected comma-separated weights (got {section!r})"
            ) from None
    return mixed_profile(game, weights)


def _pure_indices(report: EquilibriumReport) -> list[int] | None:
    if not report.is_pure:
        return None
    return [weights.index(1.0) + 1 for weights in report.profile]


def _equilibrium_results(report: EquilibriumReport) -> dict:
    return {
        "method": report.method,
        "residual": report.residual,
        "profile": [list(w) for w in report.profile],
        "payoffs": list(report.payoffs),
        "is_pure": report.is_pure,
        "pure_profile": _pure_indices(report),
    }


def _equilibrium_lines(game: Game, report: EquilibriumReport) -> list[str]:
    lines = [f"method: {report.method}", f"residual: {_fmt(report.residual)}"]
    pure = _pure_indices(report)
    if pure is not None:
        lines.append(f"profile: {_state_str(game, tuple(pure))}")
    for i, weights in enumerate(report.profile, start=1):
        lines.append(f"player {i}: {_fmt_weights(weights)}")
    lines.append(f"payoffs: {_fmt_weights(report.payoffs)}")
    return lines


def _is_constant_zero_sum(game: Game) -> bool:
    tables = game.payoffs
    return all(
        abs(sum(table[i] for table in tables)) <= ZERO_SUM_TOL
        for i in range(game.profile_count)
    )


def _cmd_info(game: Game, args: argparse.Namespace) -> int:
    zero = _is_constant_zero_sum(game)
    lines = [
        f"players: {game.player_count}",
        f"strategies: {' '.join(str(m) for m in game.strategy_counts)}",
        f"profiles: {game.profile_count}",
        f"zero-sum: {'yes' if zero else 'no'}",
    ]
    if game.labels is not None:
        for i, labels in enumerate(game.labels, start=1):
            if labels is not None:
                lines.append(f"labels {i}: {' '.join(labels)}")
    results = {
        "players": game.player_count,
        "strategies": list(game.strategy_counts),
        "profiles": game.profile_count,
        "zero_sum": zero,
        "labels": [list(l) if l is not None else None for l in game.labels]
        if game.labels is not None
        else None,
    }
    _emit(args, "info", _inputs(args), results, lines)
    return 0


def _cmd_solve(game: Game, args: argparse.Namespace) -> int:
    report = solve_nash(game, SolveConfig(tol=args.tol, seed=args.seed))
    _emit(
        args,
        "solve",
        _inputs(args),
        _equilibrium_results(report),
        _equilibrium_lines(game, report),
    )
    return 0


def _cmd_pure_nash(game: Game, args: argparse.Namespace) -> int:
    equilibria = enumerate_pure_nash(game)
    lines = [f"count: {len(equilibria)}"]
    entries = []
    for profile in equilibria:
        pays = [payoff(game, j, profile) for j in range(1, game.player_count + 1)]
        lines.append(f"{_state_str(game, profile)} payoffs: {_fmt_weights(pays)}")
        entries.append({"profile": list(profile), "payoffs": pays})
    results = {"count": len(equilibria), "equilibria": entries}
    _emit(args, "pure-nash", _inputs(args), results, lines)
    return 0


def _cmd_verify(game: Game, args: argparse.Namespace) -> int:
    mixed = _parse_profile(game, args.profile)
    residual = nash_residual(game, mixed)
    ok = residual <= args.tol
    lines = [
        f"residual: {_fmt(residual)}",
        f"equilibrium: {'yes' if ok else 'no'} (tol {_fmt(args.tol)})",
    ]
    results = {
        "profile": [list(w) for w in mixed],
        "residual": residual,
        "is_equilibrium": ok,
    }
    _emit(args, "verify", _inputs(args, profile=args.profile), results, lines)
    return 0 if ok else 1


def _cmd_zerosum_value(game: Game, args: argparse.Namespace) -> int:
    solution = zero_sum_value(game)
    lines = [
        f"value: {_fmt(solution.value)}",
        f"row strategy: {_fmt_weights(solution.row_strategy)}",
        f"column strategy: {_fmt_weights(solution.column_strategy)}",
    ]
    results = {
        "value": solution.value,
        "row_strategy": list(solution.row_strategy),
        "column_strategy": list(solution.column_strategy),
    }
    _emit(args, "zerosum-value", _inputs(args), results, lines)
    return 0


def _cmd_fragility(game: Game, args: argparse.Namespace) -> int:
    equilibrium = solve_nash(game, SolveConfig(tol=args.tol, seed=args.seed))
    report = classify_equilibrium(game, equilibrium.profile, args.kmax)
    lines = _equilibrium_lines(game, equilibrium)
    lines.append(f"classification: {report.classification}")
    lines.append(f"kmax checked: {report.kmax_checked}")
    witness = None
    if report.witness is not None:
        w = report.witness
        lines.append(f"k*: {report.kstar}")
        lines.append(f"coalition: {','.join(str(j) for j in w.coalition)}")
        lines.append(f"deviation: {','.join(str(s) for s in w.strategies)}")
        lines.append(f"gains: {_fmt_weights(w.gains)}")
        witness = {
            "coalition": list(w.coalition),
            "strategies": list(w.strategies),
            "gains": list(w.gains),
        }
    results = {
        "equilibrium": _equilibrium_results(equilibrium),
        "classification": report.classification,
        "kstar": report.kstar,
        "kmax_checked": report.kmax_checked,
        "witness": witness,
    }
    _emit(args, "fragility", _inputs(args, kmax=args.kmax), results, lines)
    return 0


def _cmd_coop_gain(game: Game, args: argparse.Namespace) -> int:
    equilibrium = solve_nash(game, SolveConfig(tol=args.tol, seed=args.seed))
    report = cooperation_gain(game, equilibrium.profile)
    lines = _equilibrium_lines(game, equilibrium)
    lines.append(f"pareto improvers: {len(report.pareto_improvers)}")
    entries = []
    for profile in report.pareto_improvers:
        pays = [payoff(game, j, profile) for j in range(1, game.player_count + 1)]
        lines.append(f"{_state_str(game, profile)} payoffs: {_fmt_weights(pays)}")
        entries.append({"profile": list(profile), "payoffs": pays})
    lines.append(f"best welfare gap: {_fmt(report.best_welfare_gap)}")
    lines.append(f"max gains: {_fmt_weights(report.max_gains)}")
    results = {
        "equilibrium": _equilibrium_results(equilibrium),
        "base_payoffs": list(report.base_payoffs),
        "pareto_improvers": entries,
        "best_welfare_gap": report.best_welfare_gap,
        "max_gains": list(report.max_gains),
    }
    _emit(args, "coop-gain", _inputs(args), results, lines)
    return 0


def _cmd_dynamics(game: Game, args: argparse.Namespace) -> int:
    start = _parse_pure(game, args.start)
    if args.regime == "c1":
        if args.kmax is not None:
            raise GameError("--kmax is only valid with --regime c2")
        trajectory = c1_walk(game, start, max_sweeps=args.steps)
    else:
        kmax = args.kmax if args.kmax is not None else 2
        trajectory = c2_walk(
            game, start, kmax, seed=args.seed, max_steps=args.steps
        )
    lines = [
        f"regime: {trajectory.regime}",
        f"states: {' -> '.join(_state_str(game, s) for s in trajectory.states)}",
    ]
    if trajectory.terminal == "absorbed":
        lines.append(f"terminal: absorbed at index {trajectory.absorbed_at}")
    elif trajectory.terminal == "cycle":
        lines.append(
            f"terminal: cycle, entry {trajectory.cycle_entry},"
            f" period {trajectory.cycle_period}"
        )
    else:
        lines.append("terminal: budget-exhausted")
    results = {
        "regime": trajectory.regime,
        "states": [list(s) for s in trajectory.states],
        "terminal": trajectory.terminal,
        "absorbed_at": trajectory.absorbed_at,
        "cycle_entry": trajectory.cycle_entry,
        "cycle_period": trajectory.cycle_period,
        "kmax": trajectory.kmax,
    }
    _emit(
        args,
        "dynamics",
        _inputs(args, regime=args.regime, start=args.start, steps=args.steps),
        results,
        lines,
    )
    return 0
