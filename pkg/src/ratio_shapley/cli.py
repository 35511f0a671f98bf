"""Command-line entry point: ``ratio-shapley <command> ...``.

Exit codes: 0 success, 1 validation or axiom failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from .audit import full_audit
from .experiments import sqrt7_sweep
from .games import GameValidationError, MAX_GENERATOR_PLAYERS, load_game, mask_of, random_monotone_game, save_game
from .rewards import allocate, check_ir, check_stability, rho_bounds
from .valuation import MAX_ORACLE_PLAYERS, Scheme, shapley

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _scheme(s: str) -> Scheme:
    return Scheme(s)


def _emit(payload: dict, args) -> None:
    text = json.dumps(payload, indent=2, allow_nan=False) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    if getattr(args, "json", False):
        sys.stdout.write(text)


def cmd_compute(args) -> int:
    game = load_game(args.game)
    if args.method == "oracle" and game.n > MAX_ORACLE_PLAYERS:
        raise UsageError(f"oracle enumerates n! orderings; refused for n={game.n} > {MAX_ORACLE_PLAYERS}")
    if args.method == "mc" and args.samples is None:
        raise UsageError("--method mc needs --samples")
    val = shapley(game, args.scheme, args.method, samples=args.samples, seed=args.seed)
    if not args.json:
        print(f"scheme={val.scheme.value} method={val.method} n={game.n}")
        for i, phi in enumerate(val.phi):
            line = f"player {i + 1}: phi={float(phi)!r}"
            if val.stderr is not None:
                line += f" stderr={float(val.stderr[i])!r}"
            print(line)
    _emit(val.to_dict(), args)
    return EXIT_OK


def _parse_coalition(text: Optional[str], n: int) -> Optional[int]:
    if text is None:
        return None
    try:
        players = [int(p) - 1 for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise UsageError(f"bad coalition {text!r}: use comma-separated 1-indexed players") from exc
    if not players or any(not 0 <= p < n for p in players):
        raise UsageError(f"coalition {text!r} must name players in 1..{n}")
    return mask_of(players)


def cmd_rewards(args) -> int:
    game = load_game(args.game)
    val = shapley(game, args.scheme, "exact")
    bounds = rho_bounds(game, val)
    if args.rho_ir:
        rho = bounds.ir.clamped
    elif args.rho_stable:
        rho = bounds.stability.clamped
    else:
        rho = args.rho
    if not 0.0 <= rho <= 1.0:
        raise UsageError(f"--rho must lie in [0, 1], got {rho}")
    coalition = _parse_coalition(args.coalition, game.n)
    alloc = allocate(game, val, rho, coalition)
    grand = alloc if coalition in (None, game.grand) else allocate(game, val, rho)
    ir = check_ir(game, grand)
    st = check_stability(game, val, rho)
    if not args.json:
        print(f"scheme={val.scheme.value} rho={rho!r}")
        for p, r in zip(alloc.members, alloc.rewards):
            print(f"player {p + 1}: phi={float(val.phi[p])!r} reward={float(r)!r}")
        print(f"rho_r raw={bounds.ir.raw!r} clamped={bounds.ir.clamped!r}")
        print(f"rho_s raw={bounds.stability.raw!r} clamped={bounds.stability.clamped!r}")
        print(f"individual rationality: {'pass' if ir else 'FAIL'}")
        print(f"grand-coalition stability: {'pass' if st else 'FAIL'}")
    payload = {
        "allocation": alloc.to_dict(),
        "phi": [float(x) for x in val.phi],
        "rho_ir": bounds.ir.to_dict(),
        "rho_stability": bounds.stability.to_dict(),
        "individual_rationality": {"pass": ir.passed, "witnesses": ir.witnesses},
        "stability": {"pass": st.passed, "witnesses": st.witnesses},
    }
    _emit(payload, args)
    return EXIT_OK


def cmd_audit(args) -> int:
    game = load_game(args.game)
    if not 0.0 <= args.rho <= 1.0:
        raise UsageError(f"--rho must lie in [0, 1], got {args.rho}")
    report = full_audit(game, args.scheme, args.rho, seed=args.seed, pairs=args.pairs)
    if args.out:
        report.write(args.out)
    if args.json:
        sys.stdout.write(report.to_json())
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_experiment_sqrt7(args) -> int:
    if args.rho_steps < 2:
        raise UsageError("--rho-steps must be at least 2")
    table = sqrt7_sweep(args.rho_steps)
    for path in table.write(args.out):
        print(f"wrote {path}")
    s = table.summary()
    print(f"top player: ratio {s['top_player_ratio']}, additive {s['top_player_additive']}")
    for p in s["players"][:2]:
        print(f"player {p['player']}: phi/phi* ratio={p['normalized_ratio']:.6f} "
              f"additive={p['normalized_additive']:.6f} ratio drops slower: {p['ratio_drops_slower']}")
    return EXIT_OK


def cmd_generate(args) -> int:
    if not 1 <= args.n <= MAX_GENERATOR_PLAYERS:
        raise UsageError(f"--n must lie in [1, {MAX_GENERATOR_PLAYERS}]")
    save_game(random_monotone_game(args.n, args.seed), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ratio-shapley", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, rho=False):
        p.add_argument("--game", required=True, help="game JSON file")
        p.add_argument("--scheme", type=_scheme, choices=list(Scheme), default=Scheme.RATIO,
                       metavar="{ratio,additive}")
        p.add_argument("--out", help="write JSON here")
        p.add_argument("--json", action="store_true", help="print JSON to stdout")

    p = sub.add_parser("compute", help="Shapley valuation of a game")
    common(p)
    p.add_argument("--method", choices=["exact", "oracle", "mc"], default="exact")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("rewards", help="rho-scaled rewards and rho bounds")
    common(p)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--rho", type=float)
    src.add_argument("--rho-ir", action="store_true", help="use the clamped rationality bound")
    src.add_argument("--rho-stable", action="store_true", help="use the clamped stability bound")
    p.add_argument("--coalition", help="comma-separated 1-indexed players (default: all)")
    p.set_defaults(func=cmd_rewards)

    p = sub.add_parser("audit", help="check every axiom, write a JSON report")
    common(p)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pairs", type=int, default=20, help="modified games for the monotonicity axiom")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("experiment-sqrt7", help="rho sweep on the seven-agent square-root game")
    p.add_argument("--rho-steps", type=int, default=21)
    p.add_argument("--out", required=True, help="CSV path; companions are written next to it")
    p.set_defaults(func=cmd_experiment_sqrt7)

    p = sub.add_parser("generate", help="write a random monotone game")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GameValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
