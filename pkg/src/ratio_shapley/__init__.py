"""Ratio-based Shapley valuation and rho-scaled rewards for monotone games."""

from .audit import AuditReport, GamePair, check_f4, full_audit, make_monotonicity_pair
from .games import Game, GameValidationError, load_game, new_game, random_monotone_game, save_game, sqrt_demo_game
from .rewards import allocate, check_ir, check_stability, rho_bounds
from .valuation import Scheme, ValuationVector, shapley, shapley_exact, shapley_monte_carlo, shapley_permutation_oracle

__all__ = [
    "AuditReport",
    "Game",
    "GamePair",
    "GameValidationError",
    "Scheme",
    "ValuationVector",
    "allocate",
    "check_f4",
    "check_ir",
    "check_stability",
    "full_audit",
    "load_game",
    "make_monotonicity_pair",
    "new_game",
    "random_monotone_game",
    "rho_bounds",
    "save_game",
    "shapley",
    "shapley_exact",
    "shapley_monte_carlo",
    "shapley_permutation_oracle",
    "sqrt_demo_game",
]
