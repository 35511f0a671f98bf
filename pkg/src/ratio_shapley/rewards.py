"""rho-scaled model rewards and the rho ceilings for rationality and stability.

A member ``i`` of coalition ``C`` receives ``(phi_i / phi_max) ** rho * v(C)``
where ``phi_max`` is the largest valuation among the members. The same code
path serves both valuation schemes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .games import Game, format_coalition, mask_of, members
from .valuation import Scheme, ValuationVector

__all__ = [
    "TOL",
    "RewardAllocation",
    "RhoBound",
    "RhoBounds",
    "CheckResult",
    "allocate",
    "rho_ir_bound",
    "rho_stability_bound",
    "rho_bounds",
    "check_ir",
    "check_stability",
    "grand_rewards",
]

TOL = 1e-12


@dataclass(frozen=True, eq=False)
class RewardAllocation:
    """Rewards for the members of ``coalition``, aligned with ``members``."""

    coalition: int
    rho: float
    scheme: Scheme
    members: Tuple[int, ...]
    rewards: np.ndarray

    def reward(self, player: int) -> float:
        return float(self.rewards[self.members.index(player)])

    def to_dict(self) -> dict:
        return {
            "coalition": [p + 1 for p in self.members],
            "rho": self.rho,
            "scheme": self.scheme.value,
            "rewards": [float(r) for r in self.rewards],
        }


@dataclass(frozen=True)
class RhoBound:
    """Largest rho for which one family of constraints holds.

    ``constraints`` maps each constraining player to its own ceiling;
    ``raw`` is their minimum (``inf`` when nobody constrains). Players whose
    constraint holds for every rho are listed in ``skipped`` with the reason.
    ``unattainable`` players cannot be satisfied by any rho > 0.
    """

    kind: str
    raw: float
    constraints: Dict[int, float] = field(default_factory=dict)
    skipped: Dict[int, str] = field(default_factory=dict)
    unattainable: Tuple[int, ...] = ()

    @property
    def clamped(self) -> float:
        return min(max(self.raw, 0.0), 1.0)

    @property
    def binding(self) -> Tuple[int, ...]:
        return tuple(p for p, b in sorted(self.constraints.items()) if b == self.raw)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "raw": _json_float(self.raw),
            "clamped": self.clamped,
            "binding": [p + 1 for p in self.binding],
            "constraints": {str(p + 1): _json_float(b) for p, b in sorted(self.constraints.items())},
            "skipped": {str(p + 1): why for p, why in sorted(self.skipped.items())},
            "unattainable": [p + 1 for p in self.unattainable],
        }


@dataclass(frozen=True)
class RhoBounds:
    ir: RhoBound
    stability: RhoBound


@dataclass
class CheckResult:
    passed: bool
    witnesses: List[dict] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


def _json_float(x: float):
    return x if math.isfinite(x) else ("Infinity" if x > 0 else "-Infinity")


def _check_valuation(game: Game, valuation: ValuationVector) -> np.ndarray:
    phi = np.asarray(valuation.phi, dtype=float)
    if phi.shape != (game.n,):
        raise ValueError(f"valuation has {phi.shape[0]} entries, game has {game.n} players")
    if np.any(phi < 0):
        raise ValueError("valuations must be non-negative")
    return phi


def allocate(game: Game, valuation: ValuationVector, rho: float,
             coalition: Optional[int] = None) -> RewardAllocation:
    """rho-scaled rewards for ``coalition`` (default: all players).

    Corners: if every member has valuation 0, all receive ``v(C)``; a zero
    valuation next to a positive maximum gets 0 for rho > 0 and ``v(C)`` at
    rho = 0.
    """
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho}")
    phi = _check_valuation(game, valuation)
    if coalition is None:
        coalition = game.grand
    if coalition == 0:
        raise ValueError("coalition must be nonempty")
    if not 0 < coalition < (1 << game.n):
        raise ValueError(f"coalition mask {coalition} out of range")
    who = tuple(members(coalition))
    sub = phi[list(who)]
    top = sub.max()
    vc = game(coalition)
    if top == 0.0:
        rewards = np.full(len(who), vc)
    else:
        # numpy gives 0.0 ** 0.0 == 1.0, the rho -> 0 limit
        rewards = np.power(sub / top, rho) * vc
    return RewardAllocation(coalition, float(rho), valuation.scheme, who, rewards)


def grand_rewards(game: Game, phi: np.ndarray, rho: float) -> np.ndarray:
    """Grand-coalition rewards straight from a valuation array."""
    top = phi.max()
    v_n = game(game.grand)
    if top == 0.0:
        return np.full(game.n, v_n)
    return np.power(phi / top, rho) * v_n


def rho_ir_bound(game: Game, valuation: ValuationVector) -> RhoBound:
    """Ceiling on rho under which every player gets at least its standalone value.

    Player ``i`` needs ``rho * log(phi_i/phi_max) >= log(v_i/v_N)``. Skipped:
    the top player (reward is v_N) and players with v_i = 0.
    """
    phi = _check_valuation(game, valuation)
    top = phi.max()
    v_n = game(game.grand)
    constraints, skipped, stuck = {}, {}, []
    for i in range(game.n):
        v_i = game(1 << i)
        if phi[i] == top:
            skipped[i] = "maximal valuation: reward equals v(N)"
        elif v_i == 0.0:
            skipped[i] = "zero standalone value"
        elif phi[i] == 0.0:
            constraints[i] = 0.0
            stuck.append(i)
        else:
            constraints[i] = math.log(v_i / v_n) / math.log(phi[i] / top)
    raw = min(constraints.values(), default=math.inf)
    return RhoBound("ir", raw, constraints, skipped, tuple(stuck))


def rho_stability_bound(game: Game, valuation: ValuationVector) -> RhoBound:
    """Ceiling on rho under which the grand coalition is stable.

    With ``C_j`` the players valued at most ``phi_j``, player ``j`` needs
    ``r_j >= v(C_j)``; every coalition headed by ``j`` lies inside ``C_j``,
    so by monotonicity this covers all of them.
    """
    phi = _check_valuation(game, valuation)
    top = phi.max()
    v_n = game(game.grand)
    constraints, skipped, stuck = {}, {}, []
    for j in range(game.n):
        c_j = mask_of(k for k in range(game.n) if phi[k] <= phi[j])
        v_cj = game(c_j)
        if phi[j] == top:
            skipped[j] = "maximal valuation: reward equals v(N)"
        elif v_cj == 0.0:
            skipped[j] = f"v{format_coalition(c_j)} = 0"
        elif phi[j] == 0.0:
            constraints[j] = 0.0
            stuck.append(j)
        else:
            constraints[j] = math.log(v_cj / v_n) / math.log(phi[j] / top)
    raw = min(constraints.values(), default=math.inf)
    return RhoBound("stability", raw, constraints, skipped, tuple(stuck))


def rho_bounds(game: Game, valuation: ValuationVector) -> RhoBounds:
    return RhoBounds(rho_ir_bound(game, valuation), rho_stability_bound(game, valuation))


def check_ir(game: Game, allocation: RewardAllocation) -> CheckResult:
    if allocation.coalition != game.grand:
        raise ValueError("individual rationality is checked on the grand coalition")
    witnesses = []
    for i, r in zip(allocation.members, allocation.rewards):
        v_i = game(1 << i)
        if r < v_i - TOL:
            witnesses.append({"player": i + 1, "reward": float(r), "standalone": v_i})
    return CheckResult(not witnesses, witnesses)


def check_stability(game: Game, valuation: ValuationVector, rho: float) -> CheckResult:
    """Exhaustive scan: each nonempty C, each top-valued member i of C, v(C) <= r_i.

    For a fixed ``i`` the coalitions it heads are exactly those containing
    ``i`` and no player valued above ``phi_i``, so they are enumerated
    directly rather than inferred from monotonicity.
    """
    phi = _check_valuation(game, valuation)
    r = allocate(game, valuation, rho).rewards
    masks = np.arange(1 << game.n, dtype=np.int64)
    v = game.values
    witnesses = []
    for i in range(game.n):
        above = mask_of(k for k in range(game.n) if phi[k] > phi[i])
        headed = masks[((masks >> i) & 1 == 1) & (masks & above == 0)]
        bad = headed[v[headed] > r[i] + TOL]
        for c in bad:
            witnesses.append({
                "coalition": [p + 1 for p in members(int(c))],
                "player": i + 1,
                "v_coalition": float(v[c]),
                "reward": float(r[i]),
            })
    witnesses.sort(key=lambda w: (len(w["coalition"]), w["coalition"], w["player"]))
    return CheckResult(not witnesses, witnesses)
