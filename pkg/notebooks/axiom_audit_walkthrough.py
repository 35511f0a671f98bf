# Auditing one game, then the small three-player pair where a higher coalition
# value lowers a player's ratio-scheme reward.

from ratio_shapley import GamePair, Scheme, check_f4, full_audit, new_game, sqrt_demo_game

report = full_audit(sqrt_demo_game(), Scheme.RATIO, rho=0.5, seed=0)
for e in report.entries:
    print(f"{e.axiom:<22} {e.status:<8} {'gating' if e.gating else 'report'}  {e.notes}")
print(report.summary())

# v{1,3} goes from 3 to 4; player 3 is in that coalition
base = new_game(3, [0, 2, 1, 3, 1, 3, 3, 4])
bumped = new_game(3, [0, 2, 1, 3, 1, 4, 3, 4])
pair = GamePair(base, bumped, focal=2)
for scheme in Scheme:
    res = check_f4(pair, scheme, rho=1.0)
    print(f"{scheme.value:>8}: r_3 {res.reward_before:.4f} -> {res.reward_after:.4f}  ({res.status})")
# ratio: 19/7 -> 44/17, so the reward drops even though v'(N) = 4 exceeds it
