# Seven players, player i brings weight i, v(C) = sqrt(sum of weights).
# Compare how the ratio and additive valuations turn into rewards as rho moves.

import numpy as np

from ratio_shapley import Scheme, allocate, rho_bounds, shapley_exact, sqrt_demo_game

game = sqrt_demo_game()
v_n = game(game.grand)
print("v(N) =", v_n, "= sqrt(28)")

phi = {s: shapley_exact(game, s) for s in Scheme}
for s, val in phi.items():
    print(f"{s.value:>8} phi:", np.round(val.phi, 5))

# normalized by the top player; 1.0 for player 7 in both
for s, val in phi.items():
    print(f"{s.value:>8} phi/phi*:", np.round(val.phi / val.phi.max(), 4))

# the ratio scheme spreads values more, so low players fall off faster
norm_rel = phi[Scheme.RATIO].phi / phi[Scheme.RATIO].phi.max()
norm_add = phi[Scheme.ADDITIVE].phi / phi[Scheme.ADDITIVE].phi.max()
print("ratio normalized above additive for players:", [i + 1 for i in np.flatnonzero(norm_rel > norm_add)])

print()
print(" rho   " + "  ".join(f"r{i}(rel)" for i in range(1, 8)))
for rho in np.linspace(0, 1, 6):
    r = allocate(game, phi[Scheme.RATIO], rho).rewards
    print(f"{rho:4.1f}  " + "  ".join(f"{x:7.4f}" for x in r))

for s, val in phi.items():
    b = rho_bounds(game, val)
    print(f"{s.value:>8} largest safe rho: IR {b.ir.raw:.6f}, stability {b.stability.raw:.6f}")
