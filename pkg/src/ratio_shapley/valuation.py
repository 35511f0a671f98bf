"""Additive and ratio-based Shapley values.

Both schemes average a marginal quantity over all orderings of the players:

* additive: ``v(S + i) - v(S)``
* ratio:    ``v(S + i) / v(S) - 1``, taken as 0 when ``v(S) == 0``

where ``S`` is the set of players preceding ``i``. Three routes compute the
same average: :func:`shapley_exact` (subset weights, the production path),
:func:`shapley_permutation_oracle` (literal enumeration of all ``n!``
orderings, kept as an independent check) and :func:`shapley_monte_carlo`.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .games import Game

__all__ = [
    "Scheme",
    "ValuationVector",
    "delta_abs",
    "delta_rel",
    "shapley_exact",
    "shapley_permutation_oracle",
    "shapley_monte_carlo",
    "shapley",
    "MAX_EXACT_PLAYERS",
    "MAX_ORACLE_PLAYERS",
]

MAX_EXACT_PLAYERS = 24
MAX_ORACLE_PLAYERS = 10


class Scheme(enum.Enum):
    ADDITIVE = "additive"
    RATIO = "ratio"


@dataclass(frozen=True, eq=False)
class ValuationVector:
    """Per-player values with provenance.

    ``method`` is one of ``"exact"``, ``"oracle"`` or ``"mc"``; the Monte
    Carlo fields are ``None`` for the other two.
    """

    phi: np.ndarray
    scheme: Scheme
    method: str
    samples: Optional[int] = None
    seed: Optional[int] = None
    stderr: Optional[np.ndarray] = None

    @property
    def n(self) -> int:
        return len(self.phi)

    def to_dict(self) -> dict:
        out = {
            "scheme": self.scheme.value,
            "method": self.method,
            "phi": [float(x) for x in self.phi],
        }
        if self.method == "mc":
            out["samples"] = self.samples
            out["seed"] = self.seed
            out["stderr"] = [float(x) for x in self.stderr]
        return out


def _check_outside(game: Game, i: int, c: int) -> None:
    if not 0 <= i < game.n:
        raise IndexError(f"player index {i} out of range for n={game.n}")
    if (c >> i) & 1:
        raise ValueError(f"player {i + 1} is already in the coalition")


def delta_abs(game: Game, i: int, c: int) -> float:
    """Additive marginal contribution of player ``i`` to coalition ``c``."""
    _check_outside(game, i, c)
    return game(c | (1 << i)) - game(c)


def delta_rel(game: Game, i: int, c: int) -> float:
    """Relative marginal contribution; 0 when the coalition is worth nothing."""
    _check_outside(game, i, c)
    base = game(c)
    if base == 0.0:
        return 0.0
    return game(c | (1 << i)) / base - 1.0


def _marginals(scheme: Scheme, with_i: np.ndarray, without_i: np.ndarray) -> np.ndarray:
    if scheme is Scheme.ADDITIVE:
        return with_i - without_i
    out = np.zeros_like(with_i)
    nz = without_i != 0.0
    np.divide(with_i, without_i, out=out, where=nz)
    out[nz] -= 1.0
    return out


def shapley_exact(game: Game, scheme: Scheme) -> ValuationVector:
    """Exact values by the subset-weight formula, O(n 2^n).

    The marginal depends only on the predecessor set ``S``, and
    ``|S|! (n - |S| - 1)!`` orderings share it, so the ordering average
    becomes a weighted subset sum. Marginals are summed per subset size
    first, then each bucket gets its weight ``1 / (n * C(n-1, s))``.
    """
    n = game.n
    if not 1 <= n <= MAX_EXACT_PLAYERS:
        raise ValueError(f"exact valuation supports 1 <= n <= {MAX_EXACT_PLAYERS}, got {n}")
    v = game.values
    masks = np.arange(1 << n, dtype=np.int64)
    sizes = np.zeros(1 << n, dtype=np.int64)
    for k in range(n):
        sizes += (masks >> k) & 1
    weights = np.array([1.0 / (n * math.comb(n - 1, s)) for s in range(n)])
    phi = np.empty(n)
    for i in range(n):
        without = masks[(masks >> i) & 1 == 0]
        d = _marginals(scheme, v[without | (1 << i)], v[without])
        buckets = np.bincount(sizes[without], weights=d, minlength=n)
        phi[i] = float(np.dot(buckets, weights))
    return ValuationVector(phi, scheme, "exact")


def shapley_permutation_oracle(game: Game, scheme: Scheme) -> ValuationVector:
    """Average over every one of the ``n!`` orderings, one marginal at a time."""
    n = game.n
    if not 1 <= n <= MAX_ORACLE_PLAYERS:
        raise ValueError(f"permutation oracle supports 1 <= n <= {MAX_ORACLE_PLAYERS}, got {n}")
    v = game.values
    total = [0.0] * n
    count = 0
    for perm in itertools.permutations(range(n)):
        before = 0
        for p in perm:
            after = before | (1 << p)
            if scheme is Scheme.ADDITIVE:
                total[p] += v[after] - v[before]
            elif v[before] != 0.0:
                total[p] += v[after] / v[before] - 1.0
            before = after
        count += 1
    return ValuationVector(np.array(total) / count, scheme, "oracle")


def shapley_monte_carlo(game: Game, scheme: Scheme, samples: int, seed: int) -> ValuationVector:
    """Plain permutation-sampling estimate with per-player standard errors."""
    if samples < 2:
        raise ValueError(f"need at least 2 samples, got {samples}")
    n = game.n
    rng = np.random.default_rng(seed)
    perms = rng.permuted(np.tile(np.arange(n), (samples, 1)), axis=1)
    bits = np.left_shift(1, perms, dtype=np.int64)
    after = np.cumsum(bits, axis=1)
    before = after - bits
    d = _marginals(scheme, game.values[after], game.values[before])
    # row r holds marginals in ordering position; scatter them back to players
    contrib = np.empty_like(d)
    np.put_along_axis(contrib, perms, d, axis=1)
    phi = contrib.mean(axis=0)
    stderr = contrib.std(axis=0, ddof=1) / math.sqrt(samples)
    return ValuationVector(phi, scheme, "mc", samples=samples, seed=seed, stderr=stderr)


def shapley(game: Game, scheme: Scheme, method: str = "exact", samples: Optional[int] = None,
            seed: int = 0) -> ValuationVector:
    if method == "exact":
        return shapley_exact(game, scheme)
    if method == "oracle":
        return shapley_permutation_oracle(game, scheme)
    if method == "mc":
        if samples is None:
            raise ValueError("Monte Carlo valuation needs a sample count")
        return shapley_monte_carlo(game, scheme, samples, seed)
    raise ValueError(f"unknown method {method!r}")
