"""Monotone bisection for ``inf{x > 0 : feasible(x)}``.

``feasible`` must be monotone: once true at ``x`` it is true for every larger
``x``. Both the Luxemburg and weak norms and the minimal domination constant
are infima of this shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

HIGH_GUARD = 1e300
LOW_GUARD = 1e-300


@dataclass(frozen=True)
class Infimum:
    value: float
    lo: float
    hi: float
    iterations: int
    converged: bool
    status: str  # "ok", "unbounded" (never feasible), "zero" (always feasible)


def bisect_infimum(feasible: Callable[[float], bool], rel_tol: float, max_iter: int,
                   start: float = 1.0) -> Infimum:
    """Bracket by doubling/halving from ``start`` then bisect to ``rel_tol``.

    The returned ``value`` is the midpoint of the final bracket; ``hi`` is
    always a feasible point and ``lo`` an infeasible one.
    """
    x = start
    if feasible(x):
        hi = x
        lo = x / 2
        while feasible(lo):
            hi = lo
            lo /= 2
            if lo < LOW_GUARD:
                return Infimum(0.0, 0.0, hi, 0, True, "zero")
    else:
        lo = x
        hi = 2 * x
        while not feasible(hi):
            lo = hi
            hi *= 2
            if hi > HIGH_GUARD:
                return Infimum(math.inf, lo, math.inf, 0, True, "unbounded")

    iterations = 0
    while hi - lo > rel_tol * hi:
        if iterations >= max_iter:
            return Infimum(0.5 * (lo + hi), lo, hi, iterations, False, "max_iter")
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if feasible(mid):
            hi = mid
        else:
            lo = mid
        iterations += 1
    return Infimum(0.5 * (lo + hi), lo, hi, iterations, True, "ok")
