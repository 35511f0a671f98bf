"""The seven-agent square-root comparison and the randomized axiom corpus."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, List, Union

import numpy as np

from .games import (
    Game,
    inject_null_player,
    make_dominant,
    random_monotone_game,
    sqrt_demo_game,
    symmetrize_pair,
)
from .rewards import grand_rewards
from .valuation import Scheme, shapley_exact

__all__ = ["SweepTable", "sqrt7_sweep", "axiom_corpus", "CSV_HEADER"]

CSV_HEADER = ("rho", "player", "reward_ratio", "reward_additive", "phi_ratio", "phi_additive")


@dataclass
class SweepTable:
    """Grand-coalition rewards of every player under both schemes along a rho grid."""

    game: Game
    rhos: np.ndarray
    phi_ratio: np.ndarray
    phi_additive: np.ndarray
    reward_ratio: np.ndarray  # shape (len(rhos), n)
    reward_additive: np.ndarray

    @property
    def n(self) -> int:
        return self.game.n

    def rows(self) -> Iterator[tuple]:
        for k, rho in enumerate(self.rhos):
            for i in range(self.n):
                yield (float(rho), i + 1, float(self.reward_ratio[k, i]), float(self.reward_additive[k, i]),
                       float(self.phi_ratio[i]), float(self.phi_additive[i]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in self.rows():
            w.writerow([repr(x) if isinstance(x, float) else x for x in row])
        return buf.getvalue()

    def to_series(self) -> str:
        """gnuplot-style blocks, one per (scheme, player), two blank lines apart."""
        blocks = []
        for name, table in (("ratio", self.reward_ratio), ("additive", self.reward_additive)):
            for i in range(self.n):
                lines = [f"# scheme={name} player={i + 1}"]
                lines += [f"{rho!r} {float(r)!r}" for rho, r in zip(self.rhos.tolist(), table[:, i])]
                blocks.append("\n".join(lines))
        return "\n\n\n".join(blocks) + "\n"

    def summary(self) -> dict:
        """Normalised valuations and how fast the rewards fall off with rho.

        ``r_i(rho) = (phi_i / phi_max) ** rho * v(N)``, so the scheme with the
        larger normalised valuation loses reward more slowly for that player.
        """
        norm_r = self.phi_ratio / self.phi_ratio.max()
        norm_a = self.phi_additive / self.phi_additive.max()
        players = []
        for i in range(self.n):
            players.append({
                "player": i + 1,
                "phi_ratio": float(self.phi_ratio[i]),
                "phi_additive": float(self.phi_additive[i]),
                "normalized_ratio": float(norm_r[i]),
                "normalized_additive": float(norm_a[i]),
                "ratio_drops_slower": bool(norm_r[i] > norm_a[i]),
            })
        return {
            "v_N": self.game(self.game.grand),
            "rho_steps": len(self.rhos),
            "top_player_ratio": int(np.argmax(self.phi_ratio)) + 1,
            "top_player_additive": int(np.argmax(self.phi_additive)) + 1,
            "players": players,
        }

    def write(self, csv_path: Union[str, Path]) -> List[Path]:
        """Write the CSV plus ``.series.dat`` and ``.summary.json`` companions."""
        csv_path = Path(csv_path)
        series = csv_path.with_suffix(".series.dat")
        summary = csv_path.with_suffix(".summary.json")
        csv_path.write_text(self.to_csv(), encoding="utf-8")
        series.write_text(self.to_series(), encoding="utf-8")
        summary.write_text(json.dumps(self.summary(), indent=2) + "\n", encoding="utf-8")
        return [csv_path, series, summary]


def sqrt7_sweep(rho_steps: int = 21, game: Game = None) -> SweepTable:
    if rho_steps < 2:
        raise ValueError("need at least 2 rho steps")
    game = game if game is not None else sqrt_demo_game()
    rhos = np.linspace(0.0, 1.0, rho_steps)
    phi_r = shapley_exact(game, Scheme.RATIO).phi
    phi_a = shapley_exact(game, Scheme.ADDITIVE).phi
    rew_r = np.array([grand_rewards(game, phi_r, rho) for rho in rhos])
    rew_a = np.array([grand_rewards(game, phi_a, rho) for rho in rhos])
    return SweepTable(game, rhos, phi_r, phi_a, rew_r, rew_a)


def axiom_corpus(count: int, seed: int, max_n: int = 6) -> Iterator[Game]:
    """Random monotone games, a share of them reshaped so the conditional
    axioms have something to bite on.

    Games cycle through four kinds: plain random, an appended useless
    player, a symmetrised pair, and a pair where one player dominates the
    other. Structured kinds need at least three players.
    """
    rng = np.random.default_rng(seed)
    for k in range(count):
        kind = k % 4
        lo = 2 if kind == 0 else 3
        n = int(rng.integers(lo, max_n + 1))
        sub_seed = int(rng.integers(2**63))
        if kind == 0:
            yield random_monotone_game(n, sub_seed)
        elif kind == 1:
            base = random_monotone_game(n - 1, sub_seed)
            cap = min(base.values[1 << p] for p in range(n - 1))
            standalone = 0.0 if rng.random() < 0.5 else float(rng.uniform(0.0, cap))
            yield inject_null_player(base, standalone)
        else:
            base = random_monotone_game(n, sub_seed)
            i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
            yield symmetrize_pair(base, i, j) if kind == 2 else make_dominant(base, i, j)
