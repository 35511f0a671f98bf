"""Monotone characteristic-function games stored as dense bitmask tables.

A coalition is an ``int`` mask: bit ``k`` set means player ``k + 1`` is a
member. ``Game.values[mask]`` is the coalition value. Players are 0-indexed
in the API and 1-indexed wherever something is printed for humans.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Sequence, Union

import numpy as np

__all__ = [
    "Game",
    "GameValidationError",
    "MonotonicityViolation",
    "check_monotone",
    "new_game",
    "value",
    "sqrt_demo_game",
    "random_monotone_game",
    "load_game",
    "save_game",
    "members",
    "mask_of",
    "format_coalition",
    "remove_player",
    "inject_null_player",
    "symmetrize_pair",
    "make_dominant",
]

MAX_GENERATOR_PLAYERS = 12


class GameValidationError(ValueError):
    """Raised when a value table is not a valid monotone game."""


@dataclass(frozen=True)
class MonotonicityViolation:
    subset: int
    superset: int
    v_subset: float
    v_superset: float

    def __str__(self) -> str:
        return (
            f"monotonicity violated: {format_coalition(self.subset)} ⊂ "
            f"{format_coalition(self.superset)} but {self.v_subset!r} > {self.v_superset!r}"
        )


@dataclass(frozen=True, eq=False)
class Game:
    """A validated game. Build it with :func:`new_game`, not directly."""

    n: int
    values: np.ndarray

    @property
    def grand(self) -> int:
        return (1 << self.n) - 1

    def __call__(self, mask: int) -> float:
        return value(self, mask)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Game):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash((self.n, self.values.tobytes()))

    def __repr__(self) -> str:
        return f"Game(n={self.n}, values={self.values.tolist()!r})"


def members(mask: int) -> List[int]:
    """0-indexed players in ``mask``, ascending."""
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def mask_of(players: Iterable[int]) -> int:
    """Mask for an iterable of 0-indexed players."""
    mask = 0
    for p in players:
        mask |= 1 << p
    return mask


def format_coalition(mask: int) -> str:
    return "{" + ",".join(str(p + 1) for p in members(mask)) + "}"


def check_monotone(values: Union[Game, Sequence[float], np.ndarray]) -> List[MonotonicityViolation]:
    """All single-player extensions that decrease the value.

    Single-player steps suffice by transitivity. Ordered by superset mask,
    then by the index of the added player.
    """
    v = values.values if isinstance(values, Game) else np.asarray(values, dtype=float)
    n = _player_count(len(v))
    masks = np.arange(1 << n, dtype=np.int64)
    found = []
    for k in range(n):
        sup = masks[(masks >> k) & 1 == 1]
        bad = sup[v[sup ^ (1 << k)] > v[sup]]
        found.extend((int(m), k) for m in bad)
    found.sort()
    return [MonotonicityViolation(m ^ (1 << k), m, float(v[m ^ (1 << k)]), float(v[m])) for m, k in found]


def _player_count(length: int) -> int:
    n = length.bit_length() - 1
    if n < 1 or (1 << n) != length:
        raise GameValidationError(f"value table length {length} is not 2^n for any n >= 1")
    return n


def new_game(n: int, values: Sequence[float]) -> Game:
    """Validate a value table and wrap it as an immutable :class:`Game`."""
    if n < 1:
        raise GameValidationError(f"player count must be >= 1, got {n}")
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != 1 << n:
        raise GameValidationError(f"expected {1 << n} values for n={n}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise GameValidationError("values must be finite")
    if arr[0] != 0.0:
        raise GameValidationError(f"v(∅) must be 0, got {arr[0]!r}")
    neg = np.flatnonzero(arr < 0)
    if neg.size:
        raise GameValidationError(f"negative value {arr[neg[0]]!r} at {format_coalition(int(neg[0]))}")
    violations = check_monotone(arr)
    if violations:
        raise GameValidationError(str(violations[0]))
    arr.setflags(write=False)
    return Game(n, arr)


def value(game: Game, mask: int) -> float:
    if not 0 <= mask < (1 << game.n):
        raise IndexError(f"coalition mask {mask} out of range for n={game.n}")
    return float(game.values[mask])


def _subset_sums(weights: Sequence[float]) -> np.ndarray:
    n = len(weights)
    sums = np.zeros(1 << n)
    for k, w in enumerate(weights):
        sums[1 << k : 1 << (k + 1)] = sums[: 1 << k] + w
    return sums


def sqrt_demo_game(n: int = 7) -> Game:
    """Player ``i`` (1-indexed) brings weight ``i``; v(C) = sqrt(sum of weights)."""
    return new_game(n, np.sqrt(_subset_sums(range(1, n + 1))))


def random_monotone_game(n: int, seed: int) -> Game:
    """Random strictly monotone game, a pure function of ``(n, seed)``.

    Masks are filled in order of population count; each value is the
    largest one-player-removal value plus a U[0, 1] increment.
    """
    if not 1 <= n <= MAX_GENERATOR_PLAYERS:
        raise ValueError(f"n must be in [1, {MAX_GENERATOR_PLAYERS}], got {n}")
    rng = np.random.default_rng(seed)
    size = 1 << n
    order = sorted(range(1, size), key=lambda m: (m.bit_count(), m))
    increments = rng.uniform(0.0, 1.0, size=size - 1)
    v = np.zeros(size)
    for mask, inc in zip(order, increments):
        v[mask] = max(v[mask ^ (1 << k)] for k in members(mask)) + inc
    return new_game(n, v)


def save_game(game: Game, path: Union[str, Path]) -> None:
    # json writes floats via repr, which round-trips exactly
    payload = {"n": game.n, "values": [float(x) for x in game.values]}
    Path(path).write_text(json.dumps(payload) + "\n", encoding="utf-8")


def load_game(path: Union[str, Path]) -> Game:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GameValidationError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(payload, dict) or "n" not in payload or "values" not in payload:
        raise GameValidationError(f"{path}: expected an object with fields 'n' and 'values'")
    n, values = payload["n"], payload["values"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise GameValidationError(f"{path}: 'n' must be an integer")
    if not isinstance(values, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in values
    ):
        raise GameValidationError(f"{path}: 'values' must be an array of numbers")
    return new_game(n, values)


# -- structured game builders, used to exercise the conditional axioms ------


def remove_player(game: Game, player: int) -> Game:
    """The subgame on all players except ``player``, re-indexed densely."""
    if game.n < 2:
        raise ValueError("cannot remove a player from a one-player game")
    keep = [k for k in range(game.n) if k != player]
    idx = np.array([mask_of(keep[b] for b in members(m)) for m in range(1 << (game.n - 1))])
    return new_game(game.n - 1, game.values[idx])


def inject_null_player(game: Game, standalone: float = 0.0) -> Game:
    """Append a player who changes no nonempty coalition's value.

    ``standalone`` is the new player's own value; monotonicity caps it at the
    smallest singleton value of the other players.
    """
    n = game.n
    lo = min(game.values[1 << k] for k in range(n))
    if not 0.0 <= standalone <= lo:
        raise ValueError(f"standalone value must lie in [0, {lo}]")
    v = np.concatenate([game.values, game.values])
    v[1 << n] = standalone
    return new_game(n + 1, v)


def _swap(mask: int, i: int, j: int) -> int:
    bi, bj = (mask >> i) & 1, (mask >> j) & 1
    if bi != bj:
        mask ^= (1 << i) | (1 << j)
    return mask


def symmetrize_pair(game: Game, i: int, j: int) -> Game:
    """v(C) = max(v(C), v(swap_ij C)), which makes ``i`` and ``j`` symmetric.

    The max of two monotone games is monotone.
    """
    v = game.values
    swapped = np.array([v[_swap(m, i, j)] for m in range(1 << game.n)])
    return new_game(game.n, np.maximum(v, swapped))


def make_dominant(game: Game, i: int, j: int) -> Game:
    """Raise coalitions holding ``i`` but not ``j`` so ``i`` weakly dominates ``j``.

    Such a coalition C gets max(v(C), v(swap_ij C)); others are unchanged.
    Monotone because v(C + j) >= v(C - i + j) in the original game.
    """
    v = game.values.copy()
    for m in range(1 << game.n):
        if (m >> i) & 1 and not (m >> j) & 1:
            v[m] = max(v[m], game.values[_swap(m, i, j)])
    return new_game(game.n, v)
