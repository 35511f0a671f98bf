"""Exact-arithmetic reference computations, independent of the package.

Everything here works on plain lists of ``Fraction`` values indexed by
bitmask and enumerates orderings literally.
"""

from fractions import Fraction
from itertools import permutations
from math import factorial


def frac_values(values):
    return [Fraction(x) for x in values]


def shapley_by_orderings(values, ratio):
    v = frac_values(values)
    n = len(v).bit_length() - 1
    total = [Fraction(0)] * n
    for perm in permutations(range(n)):
        before = 0
        for p in perm:
            after = before | (1 << p)
            if not ratio:
                total[p] += v[after] - v[before]
            elif v[before] != 0:
                total[p] += v[after] / v[before] - 1
            before = after
    return [t / factorial(n) for t in total]


def rewards(phi, v_grand, rho=1):
    """Grand-coalition rewards for rho in {0, 1}, kept exact."""
    top = max(phi)
    if rho == 0 or top == 0:
        return [Fraction(v_grand)] * len(phi)
    return [p / top * v_grand for p in phi]
