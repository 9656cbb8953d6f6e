"""Non-negative solutions of linear Diophantine equations with positive coefficients.

An equation ``c_1 v_1 + ... + c_k v_k = d`` is reduced to a chain of two-variable
equations ``a x + b y = d``, each solved from a Bezout pair of ``(a, b)``. Solutions are
listed with the first coordinate descending.
"""
from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Sequence, Tuple

__all__ = ['extended_euclid', 'solve_two_var', 'solve_nonneg', 'solve_cached', 'cache_info', 'cache_clear']

Solutions = Tuple[Tuple[int, ...], ...]

CACHE_SIZE = 65536


def extended_euclid(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b)`` and ``a*x + b*y = g``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return old_r, old_x, old_y


def solve_two_var(a: int, b: int, d: int) -> Solutions:
    """All ``(x, y) >= 0`` with ``a*x + b*y = d``, ``x`` descending.

    >>> solve_two_var(1, 2, 3)
    ((3, 0), (1, 1))
    """
    if a < 1 or b < 1 or d < 0:
        raise ValueError('coefficients must be positive and the constant non-negative')
    g, x0, y0 = extended_euclid(a, b)
    if d % g:
        return ()
    scale = d // g
    x0 *= scale
    y0 *= scale
    step_x, step_y = b // g, a // g
    # x = x0 + step_x*t >= 0 and y = y0 - step_y*t >= 0
    t_min = -(x0 // step_x)
    t_max = y0 // step_y
    return tuple((x0 + step_x * t, y0 - step_y * t) for t in range(t_max, t_min - 1, -1))


def solve_nonneg(coefficients: Sequence[int], constant: int) -> Solutions:
    """All non-negative integer vectors ``v`` with ``sum(c*v) == constant``."""
    coefficients = tuple(coefficients)
    if not coefficients or min(coefficients) < 1 or constant < 0:
        raise ValueError('need at least one positive coefficient and a non-negative constant')
    return _solve(coefficients, constant)


def _solve(coefficients, constant):
    if len(coefficients) == 1:
        a = coefficients[0]
        return ((constant // a,),) if constant % a == 0 else ()
    if len(coefficients) == 2:
        return solve_two_var(coefficients[0], coefficients[1], constant)
    head, rest = coefficients[0], coefficients[1:]
    g = 0
    for c in rest:
        g = gcd(g, c)
    reduced = tuple(c // g for c in rest)
    solutions = []
    # head*x + g*w = constant, then reduced . v = w
    for x, w in solve_two_var(head, g, constant):
        for tail in _solve(reduced, w):
            solutions.append((x,) + tail)
    return tuple(solutions)


@lru_cache(maxsize=CACHE_SIZE)
def _solve_cached(coefficients, constant):
    return solve_nonneg(coefficients, constant)


def solve_cached(coefficients: Sequence[int], constant: int) -> Solutions:
    """:func:`solve_nonneg` behind a bounded LRU cache keyed on ``(coefficients, constant)``."""
    return _solve_cached(tuple(coefficients), constant)


def cache_info():
    return _solve_cached.cache_info()


def cache_clear():
    _solve_cached.cache_clear()
