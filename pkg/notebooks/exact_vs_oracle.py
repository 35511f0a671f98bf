# The subset-weight formula against the literal n! permutation average,
# plus how fast the sampled estimate closes in.

import time

import numpy as np

from ratio_shapley import Scheme, random_monotone_game, shapley_exact, shapley_monte_carlo, shapley_permutation_oracle

for n in range(2, 9):
    g = random_monotone_game(n, seed=n)
    t0 = time.perf_counter()
    ex = shapley_exact(g, Scheme.RATIO).phi
    t1 = time.perf_counter()
    orc = shapley_permutation_oracle(g, Scheme.RATIO).phi
    t2 = time.perf_counter()
    print(f"n={n}  max diff {np.abs(ex - orc).max():.2e}  exact {1e3 * (t1 - t0):7.2f} ms  oracle {1e3 * (t2 - t1):8.2f} ms")

g = random_monotone_game(8, seed=1)
exact = shapley_exact(g, Scheme.RATIO).phi
for samples in (100, 1_000, 10_000, 100_000):
    est = shapley_monte_carlo(g, Scheme.RATIO, samples, seed=0)
    z = np.abs(est.phi - exact) / est.stderr
    print(f"{samples:>7} samples  max error {np.abs(est.phi - exact).max():.2e}  max |z| {z.max():.2f}")
