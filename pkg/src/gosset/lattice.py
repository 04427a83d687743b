"""Counts of vectors of a given norm in the orthogonal complement of K on S_8.

K^perp in Pic S_8 with the negated pairing is the E_8 lattice. Three
independent routes count its vectors of norm N:

* ``count_orthogonal_vectors``: integer (a0, ..., a8) with D.K = 0 and
  -D^2 = N, counted directly in the Picard basis;
* ``count_e8_vectors``: the usual E_8 coordinates (D_8 plus its half-integer coset);
* ``e8_theta_coefficient``: 240 * sigma_3(N / 2), the E_8 theta series.
"""
from __future__ import annotations

import math
from collections import Counter
from functools import lru_cache

from .picard import DivisorClass, canonical, pairing

NORM_COUNTS = {10: 30240, 12: 60480, 14: 82560, 16: 140400}


def _tuple_counts(n: int, bound: int, key) -> Counter:
    """Distribution of key-statistics over Z^n restricted to |x_i| <= bound.

    ``key(state, x)`` folds one coordinate into a hashable state.
    """
    states: Counter = Counter({(0, 0): 1})
    for _ in range(n):
        nxt: Counter = Counter()
        for state, c in states.items():
            for x in range(-bound, bound + 1):
                new = key(state, x)
                if new is not None:
                    nxt[new] += c
        states = nxt
    return states


def count_orthogonal_vectors(norm: int) -> int:
    """#{D in Pic S_8 : D.K = 0, D^2 = -norm}.

    With D = a0 h + sum a_i e_i, D.K = 0 means sum a_i = -3 a0 and D^2 = -norm means sum a_i^2 = a0^2 + norm.
    Cauchy-Schwarz gives 9 a0^2 <= 8 (a0^2 + norm), i.e. a0^2 <= 8 norm.
    """
    if norm <= 0:
        return 1 if norm == 0 else 0
    a0_max = math.isqrt(8 * norm)
    sq_max = a0_max * a0_max + norm
    bound = math.isqrt(sq_max)

    def fold(state, x):
        s, q = state
        q += x * x
        return None if q > sq_max else (s + x, q)

    dist = _tuple_counts(8, bound, fold)
    return sum(dist.get((-3 * a0, a0 * a0 + norm), 0) for a0 in range(-a0_max, a0_max + 1))


def count_e8_vectors(norm: int) -> int:
    """Vectors of squared length ``norm`` in E_8 = D_8 + (D_8 + (1/2,...,1/2))."""
    if norm <= 0:
        return 1 if norm == 0 else 0
    bound = math.isqrt(norm)

    def fold_int(state, x):
        p, q = state
        q += x * x
        return None if q > norm else ((p + x) % 2, q)

    integral = _tuple_counts(8, bound, fold_int).get((0, norm), 0)
    # half-integral: z = 2y with odd z_i, sum z_i^2 = 4 norm, sum y_i even <=> sum z_i = 0 mod 4
    bound2 = math.isqrt(4 * norm)

    def fold_half(state, z):
        if z % 2 == 0:
            return None
        p, q = state
        q += z * z
        return None if q > 4 * norm else ((p + z) % 4, q)

    half = _tuple_counts(8, bound2, fold_half).get((0, 4 * norm), 0)
    return integral + half


def sigma3(n: int) -> int:
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def e8_theta_coefficient(norm: int) -> int:
    if norm == 0:
        return 1
    if norm < 0 or norm % 2:
        return 0
    return 240 * sigma3(norm // 2)


@lru_cache(maxsize=None)
def norm_count(norm: int) -> int:
    """Primary route, cross-checked against the E_8 coordinate count."""
    return count_orthogonal_vectors(norm)


def shifted_center(D: DivisorClass) -> DivisorClass:
    """D + (n+1) K for the center D of an A_n^8(1); lies in K^perp with norm 2(n+1)."""
    m = -pairing(D, canonical(8))
    return D + m * canonical(8)


def in_norm_shell(D: DivisorClass, norm: int) -> bool:
    return pairing(D, canonical(8)) == 0 and pairing(D, D) == -norm
