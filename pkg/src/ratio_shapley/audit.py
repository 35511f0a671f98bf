"""Executable checks of the incentive and fairness axioms.

Detectors (:func:`find_useless_players`, :func:`find_symmetric_pairs`,
:func:`check_desirability`) look at the game alone and decide which
conditional axioms apply; :func:`full_audit` then checks that the valuation
and the allocated rewards honour each conclusion.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np

from .games import Game, format_coalition, members, new_game, remove_player
from .rewards import (
    TOL,
    CheckResult,
    allocate,
    check_ir,
    check_stability,
    rho_bounds,
)
from .valuation import Scheme, ValuationVector, shapley_exact

__all__ = [
    "AuditEntry",
    "AuditReport",
    "Desirability",
    "GamePair",
    "F4Result",
    "find_useless_players",
    "find_symmetric_pairs",
    "check_desirability",
    "make_monotonicity_pair",
    "check_f4",
    "check_party_monotonicity",
    "full_audit",
]

MAX_WITNESSES = 25


@dataclass
class AuditEntry:
    axiom: str
    status: str  # "pass", "fail", "vacuous" or "info"
    gating: bool = True
    witnesses: List[dict] = field(default_factory=list)
    notes: str = ""

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "status": self.status,
            "gating": self.gating,
            "witnesses": self.witnesses[:MAX_WITNESSES],
            "witness_count": len(self.witnesses),
            "notes": self.notes,
        }


@dataclass
class AuditReport:
    scheme: Scheme
    rho: float
    seed: int
    entries: List[AuditEntry]

    def __getitem__(self, axiom: str) -> AuditEntry:
        for e in self.entries:
            if e.axiom == axiom:
                return e
        raise KeyError(axiom)

    @property
    def failures(self) -> List[AuditEntry]:
        return [e for e in self.entries if e.gating and e.status == "fail"]

    @property
    def passed(self) -> bool:
        return not self.failures

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "vacuous": 0, "info": 0}
        for e in self.entries:
            out[e.status] += 1
        return out

    def summary(self) -> str:
        c = self.counts()
        verdict = "OK" if self.passed else "FAILED: " + ",".join(e.axiom for e in self.failures)
        return (f"audit scheme={self.scheme.value} rho={self.rho!r}: {c['pass']} pass, "
                f"{c['fail']} fail, {c['vacuous']} vacuous, {c['info']} info -> {verdict}")

    def to_json(self) -> str:
        return json.dumps([e.to_dict() for e in self.entries], indent=2, allow_nan=False) + "\n"

    def write(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")


# -- detectors ---------------------------------------------------------------


def _excluding(n: int, *players: int) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.int64)
    keep = np.ones(1 << n, dtype=bool)
    for p in players:
        keep &= (masks >> p) & 1 == 0
    return masks[keep]


def find_useless_players(game: Game, tol: float = TOL) -> List[int]:
    """Players that change no *nonempty* coalition's value.

    The empty coalition is deliberately left out, so a player with a
    positive standalone value can still be useless.
    """
    out = []
    for i in range(game.n):
        c = _excluding(game.n, i)
        c = c[c != 0]
        if np.all(np.abs(game.values[c | (1 << i)] - game.values[c]) <= tol):
            out.append(i)
    return out


def find_symmetric_pairs(game: Game, tol: float = TOL) -> List[Tuple[int, int]]:
    out = []
    v = game.values
    for i, j in itertools.combinations(range(game.n), 2):
        c = _excluding(game.n, i, j)
        if np.all(np.abs(v[c | (1 << i)] - v[c | (1 << j)]) <= tol):
            out.append((i, j))
    return out


@dataclass(frozen=True)
class Desirability:
    relation: str  # "i_dominates", "j_dominates", "symmetric" or "incomparable"
    witness: Optional[int] = None  # nonempty B where the dominant player is strictly better


def check_desirability(game: Game, i: int, j: int, tol: float = TOL) -> Desirability:
    """Compare players ``i`` and ``j`` coalition by coalition.

    Dominance needs a weak advantage on every C (the empty one included) and
    a strict advantage on some nonempty B. A difference that shows only at
    the empty coalition does not count, so such a pair is "symmetric".
    """
    if i == j:
        raise ValueError("need two distinct players")
    v = game.values
    c = _excluding(game.n, i, j)
    diff = v[c | (1 << i)] - v[c | (1 << j)]
    nonempty = c != 0
    if np.all(np.abs(diff[nonempty]) <= tol):
        return Desirability("symmetric")
    if np.all(diff >= -tol):
        b = c[nonempty & (diff > tol)]
        return Desirability("i_dominates", int(b[0]))
    if np.all(diff <= tol):
        b = c[nonempty & (diff < -tol)]
        return Desirability("j_dominates", int(b[0]))
    return Desirability("incomparable")


# -- strict monotonicity -----------------------------------------------------


@dataclass(frozen=True)
class GamePair:
    """Two games that differ only on coalitions containing ``focal``, upward."""

    base: Game
    modified: Game
    focal: int

    def __post_init__(self):
        if self.base.n != self.modified.n or not 0 <= self.focal < self.base.n:
            raise ValueError("malformed pair: player counts or focal index disagree")
        masks = np.arange(1 << self.base.n)
        has = (masks >> self.focal) & 1 == 1
        d = self.modified.values - self.base.values
        if np.any(d[~has] != 0):
            raise ValueError("malformed pair: a coalition without the focal player changed")
        if np.any(d[has] < 0):
            raise ValueError("malformed pair: a coalition value decreased")
        if not np.any(d[has] > 0):
            raise ValueError("malformed pair: no coalition value increased")


def make_monotonicity_pair(game: Game, i: int, seed: int) -> GamePair:
    """Raise a random nonempty set of coalitions containing ``i``.

    After the bumps, values of coalitions containing ``i`` are repaired
    upward in order of size. Coalitions without ``i`` never need touching:
    their subsets also lack ``i`` and are unchanged.
    """
    rng = np.random.default_rng(seed)
    n = game.n
    with_i = [m for m in range(1 << n) if (m >> i) & 1]
    scale = game(game.grand) or 1.0
    k = int(rng.integers(1, len(with_i) + 1))
    picked = rng.choice(len(with_i), size=k, replace=False)
    v = game.values.copy()
    for idx in sorted(picked):
        v[with_i[idx]] += rng.uniform(0.05, 1.0) * scale
    for m in sorted(with_i, key=lambda m: (m.bit_count(), m)):
        v[m] = max([v[m]] + [v[m ^ (1 << k)] for k in members(m)])
    return GamePair(game, new_game(n, v), i)


@dataclass(frozen=True)
class F4Result:
    status: str  # "pass", "fail" or "vacuous"
    reward_before: float
    reward_after: float
    v_after: float

    def witness(self, focal: int) -> dict:
        return {"player": focal + 1, "r_before": self.reward_before,
                "r_after": self.reward_after, "v_after_N": self.v_after}


def check_f4(pair: GamePair, scheme: Scheme, rho: float) -> F4Result:
    """Premise ``v'(N) > r_i`` forces ``r'_i > r_i``; otherwise vacuous."""
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho}")
    i = pair.focal
    r = allocate(pair.base, shapley_exact(pair.base, scheme), rho).rewards[i]
    r2 = allocate(pair.modified, shapley_exact(pair.modified, scheme), rho).rewards[i]
    v2 = pair.modified(pair.modified.grand)
    if not v2 > r + TOL:
        return F4Result("vacuous", float(r), float(r2), v2)
    return F4Result("pass" if r2 > r else "fail", float(r), float(r2), v2)


def check_party_monotonicity(pair: GamePair, scheme: Scheme) -> CheckResult:
    """Does the focal player's valuation gain dominate everyone else's?"""
    i = pair.focal
    gain = shapley_exact(pair.modified, scheme).phi - shapley_exact(pair.base, scheme).phi
    witnesses = [
        {"focal": i + 1, "other": j + 1, "gain_focal": float(gain[i]), "gain_other": float(gain[j])}
        for j in range(pair.base.n)
        if j != i and gain[i] < gain[j] - TOL
    ]
    return CheckResult(not witnesses, witnesses)


# -- orchestration -----------------------------------------------------------


def _status(witnesses: List[dict], checked: int) -> str:
    if witnesses:
        return "fail"
    return "pass" if checked else "vacuous"


def _incentive_entries(game: Game, valuation: ValuationVector, rho: float) -> List[AuditEntry]:
    alloc = allocate(game, valuation, rho)
    r = alloc.rewards
    v_n = game(game.grand)
    r1 = [{"player": i + 1, "reward": float(x)} for i, x in enumerate(r) if x < -TOL]
    r2 = [{"player": i + 1, "reward": float(x), "v_N": v_n} for i, x in enumerate(r) if x > v_n + TOL]
    hit = np.abs(r - v_n) <= TOL
    r3 = [] if hit.any() else [{"max_reward": float(r.max()), "v_N": v_n}]
    entries = [
        AuditEntry("R1", _status(r1, 1), witnesses=r1),
        AuditEntry("R2", _status(r2, 1), witnesses=r2),
        AuditEntry("R3", _status(r3, 1), witnesses=r3,
                   notes="" if r3 else f"players reaching v(N): {[int(i) + 1 for i in np.flatnonzero(hit)]}"),
    ]

    bounds = rho_bounds(game, valuation)
    ir = check_ir(game, alloc)
    entries.append(AuditEntry("R4", "pass" if ir else "fail", witnesses=ir.witnesses,
                              notes=f"rho_r raw={bounds.ir.raw!r} clamped={bounds.ir.clamped!r}"))
    st = check_stability(game, valuation, rho)
    entries.append(AuditEntry("R6", "pass" if st else "fail", witnesses=st.witnesses,
                              notes=f"rho_s raw={bounds.stability.raw!r} "
                                    f"clamped={bounds.stability.clamped!r}"))

    for bound, checker, axiom in (
        (bounds.ir, lambda x: check_ir(game, allocate(game, valuation, x)), "R4-bound"),
        (bounds.stability, lambda x: check_stability(game, valuation, x), "R6-bound"),
    ):
        at = bound.clamped * (1 - 1e-9)
        res = checker(at)
        notes = [f"checked at rho={at!r}"]
        info = []
        if bound.unattainable:
            notes.append("unattainable for rho>0: players " + str([p + 1 for p in bound.unattainable]))
        above = bound.raw * (1 + 1e-6)
        if math.isfinite(bound.raw) and 0 < bound.raw and above <= 1:
            if checker(above).passed:
                info.append({"rho": above, "finding": "no violation just above the bound"})
                notes.append("bound not tight")
            else:
                notes.append("bound tight")
        entries.append(AuditEntry(axiom, "pass" if res else "fail",
                                  witnesses=res.witnesses + info, notes="; ".join(notes)))
    return entries


def _fairness_entries(game: Game, valuation: ValuationVector, rho: float, tol: float) -> List[AuditEntry]:
    phi = valuation.phi
    r = allocate(game, valuation, rho).rewards
    top = phi.max()
    entries = []

    # F1
    useless = find_useless_players(game, tol)
    wit, notes, bad = [], [], []
    for u in useless:
        row = {"player": u + 1, "phi": float(phi[u]), "reward": float(r[u]), "standalone": game(1 << u)}
        wit.append(row)
        if top == 0.0:
            continue
        if abs(phi[u]) > tol or (rho > 0 and r[u] > tol):
            bad.append(row)
    if useless and top == 0.0:
        notes.append("every valuation is 0, so normalisation is undefined; reward conclusion vacuous")
    if rho == 0 and useless:
        notes.append("rho=0 equalises rewards; only the valuation conclusion is checked")
    weak = [u + 1 for u in useless if game(1 << u) > 0]
    if weak:
        notes.append(f"useless players with positive standalone value {weak}: F1 conflicts with R4 for rho>0")
    if bad:
        status = "fail"
    elif not useless or top == 0.0:
        status = "vacuous"
    else:
        status = "pass"
    entries.append(AuditEntry("F1", status, witnesses=bad if bad else wit, notes="; ".join(notes)))

    # removing a useless player should leave everyone else's reward alone
    wit, info = [], []
    for u in useless:
        if game.n < 2 or top == 0.0:
            continue
        sub = remove_player(game, u)
        r_sub = allocate(sub, shapley_exact(sub, valuation.scheme), rho).rewards
        others = [k for k in range(game.n) if k != u]
        for k, rk in zip(others, r_sub):
            if abs(r[k] - rk) > tol:
                row = {"removed": u + 1, "player": k + 1, "reward_with": float(r[k]), "reward_without": float(rk)}
                (wit if game(1 << u) == 0 else info).append(row)
    checked = any(game.n >= 2 and top > 0 for _ in useless)
    status = "fail" if wit else ("info" if info else ("pass" if checked else "vacuous"))
    entries.append(AuditEntry(
        "F1-others", status, witnesses=wit + info,
        notes="mismatches for a useless player with positive standalone value are informational"
        if info else ""))

    # F2
    pairs = find_symmetric_pairs(game, tol)
    bad = [
        {"pair": [i + 1, j + 1], "phi": [float(phi[i]), float(phi[j])], "reward": [float(r[i]), float(r[j])]}
        for i, j in pairs
        if abs(phi[i] - phi[j]) > tol or abs(r[i] - r[j]) > tol
    ]
    entries.append(AuditEntry("F2", _status(bad, len(pairs)), witnesses=bad,
                              notes=f"symmetric pairs: {[(i + 1, j + 1) for i, j in pairs]}"))

    # F3
    checked, bad = 0, []
    for a, b in itertools.combinations(range(game.n), 2):
        d = check_desirability(game, a, b, tol)
        if d.relation not in ("i_dominates", "j_dominates"):
            continue
        hi, lo = (a, b) if d.relation == "i_dominates" else (b, a)
        checked += 1
        if not phi[hi] > phi[lo] or (rho > 0 and not r[hi] > r[lo]):
            bad.append({"dominant": hi + 1, "other": lo + 1, "witness_B": format_coalition(d.witness),
                        "phi": [float(phi[hi]), float(phi[lo])], "reward": [float(r[hi]), float(r[lo])]})
    notes = "rho=0 equalises rewards; only the valuation conclusion is checked" if rho == 0 and checked else ""
    entries.append(AuditEntry("F3", _status(bad, checked), witnesses=bad, notes=notes))
    return entries


def full_audit(game: Game, scheme: Scheme, rho: float, seed: int = 0, pairs: int = 20,
               tol: float = TOL) -> AuditReport:
    """Run every checker on ``game`` and return a report sorted by axiom id.

    F4 and the party-monotonicity probe use ``pairs`` modified games drawn
    from ``seed``. The party-monotonicity probe and the argmax comparison
    never gate; F4 gates only for the additive scheme.
    """
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho}")
    valuation = shapley_exact(game, scheme)
    entries = _incentive_entries(game, valuation, rho)
    entries += _fairness_entries(game, valuation, rho, tol)

    rng = np.random.default_rng(seed)
    f4_bad, f4_seen, f4_vacuous, pm_bad = [], 0, 0, []
    for _ in range(pairs):
        focal = int(rng.integers(game.n))
        pair = make_monotonicity_pair(game, focal, int(rng.integers(2**63)))
        res = check_f4(pair, scheme, rho)
        f4_seen += 1
        if res.status == "vacuous":
            f4_vacuous += 1
        elif res.status == "fail":
            f4_bad.append(res.witness(focal))
        pm = check_party_monotonicity(pair, scheme)
        pm_bad.extend(pm.witnesses)
    status = "fail" if f4_bad else ("vacuous" if f4_vacuous == f4_seen else "pass")
    notes = f"{f4_seen} pairs, {f4_vacuous} with premise v'(N) > r_i false"
    if scheme is Scheme.RATIO:
        notes += ("; report-only for the ratio scheme, which has counterexamples "
                  "(e.g. v = [0,2,1,3,1,3,3,4] with v{1,3} raised to 4, focal player 3, rho=1)")
    entries.append(AuditEntry("F4", status, gating=scheme is Scheme.ADDITIVE, witnesses=f4_bad, notes=notes))
    entries.append(AuditEntry("F4-party-monotonicity", "info" if pm_bad else "pass", gating=False,
                              witnesses=pm_bad, notes=f"probe over {pairs} pairs"))

    other = Scheme.ADDITIVE if scheme is Scheme.RATIO else Scheme.RATIO
    phi_other = shapley_exact(game, other).phi
    top_here = [int(i) + 1 for i in np.flatnonzero(valuation.phi == valuation.phi.max())]
    top_other = [int(i) + 1 for i in np.flatnonzero(phi_other == phi_other.max())]
    same = bool(set(top_here) & set(top_other))
    entries.append(AuditEntry(
        "argmax", "pass" if same else "info", gating=False,
        witnesses=[] if same else [{scheme.value: top_here, other.value: top_other}],
        notes=f"top-valued players: {scheme.value} {top_here}, {other.value} {top_other}"))

    entries.sort(key=lambda e: e.axiom)
    return AuditReport(scheme, float(rho), seed, entries)
