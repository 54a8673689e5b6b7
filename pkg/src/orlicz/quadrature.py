"""Adaptive Gauss-Legendre quadrature in ``x = log s`` with tail control.

Used for layer-cake integrals ``int_0^inf h(s) ds`` where ``h`` is a
nonincreasing distribution-type function. Finite pieces are integrated on
panels split at known breakpoints; infinite ends are walked outward until
the local decay exponent certifies the remainder is negligible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(20)

# |log s| beyond this is outside the range where phi and its inverse are
# evaluated without saturation.
LOG_CUTOFF = 675.0
TAIL_STEP = 4.0


class QuadratureError(ArithmeticError):
    """The integrand decays but not fast enough to certify a finite value."""


@dataclass
class TailOutcome:
    value: float
    diverges: bool


def _gl(fn: Callable[[np.ndarray], np.ndarray], a: float, b: float) -> float:
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * _NODES
    return float(half * np.dot(_WEIGHTS, fn(x)))


def integrate_panel(fn: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                    rel_tol: float, abs_tol: float = 0.0, max_depth: int = 40) -> float:
    """Adaptive bisection of ``[a, b]`` until halves agree with the whole."""
    total = 0.0
    stack = [(a, b, _gl(fn, a, b), 0)]
    while stack:
        lo, hi, whole, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left, right = _gl(fn, lo, mid), _gl(fn, mid, hi)
        if abs(left + right - whole) <= max(rel_tol * abs(left + right), abs_tol) or depth >= max_depth:
            total += left + right
        else:
            stack.append((lo, mid, left, depth + 1))
            stack.append((mid, hi, right, depth + 1))
    return total


def _in_log(h: Callable[[np.ndarray], np.ndarray]) -> Callable[[np.ndarray], np.ndarray]:
    def g(x: np.ndarray) -> np.ndarray:
        s = np.exp(x)
        return s * h(s)
    return g


def integrate_log(h: Callable[[np.ndarray], np.ndarray], s_lo: float, s_hi: float,
                  breakpoints=(), rel_tol: float = 1e-10) -> float:
    """``int_{s_lo}^{s_hi} h(s) ds`` for ``0 < s_lo < s_hi < inf``."""
    g = _in_log(h)
    xs = [math.log(s_lo), math.log(s_hi)]
    xs += [math.log(p) for p in breakpoints if s_lo < p < s_hi]
    xs = sorted(set(xs))
    return math.fsum(integrate_panel(g, a, b, rel_tol) for a, b in zip(xs, xs[1:]))


def _local_decay(g: Callable[[np.ndarray], np.ndarray], x: float, direction: float) -> tuple[float, float]:
    """Value of g at x and its outward exponential decay rate."""
    pair = g(np.array([x, x + direction]))
    v0, v1 = float(pair[0]), float(pair[1])
    if v0 <= 0:
        return 0.0, math.inf
    if v1 <= 0:
        return v0, math.inf
    return v0, math.log(v0 / v1)


def integrate_tail(h: Callable[[np.ndarray], np.ndarray], s_start: float, direction: int,
                   scale: float, rel_tol: float = 1e-10) -> TailOutcome:
    """Integrate from ``s_start`` toward 0 (``direction=-1``) or infinity (``+1``).

    ``scale`` is the magnitude of the rest of the integral, used for the
    relative stopping rule. Reports ``diverges`` when the log-space integrand
    stops decaying before the cutoff.
    """
    g = _in_log(h)
    x = math.log(s_start)
    acc = 0.0
    while True:
        value, rate = _local_decay(g, x, float(direction))
        # h is nonincreasing: zero here means zero for every larger s, but a
        # zero at the start of a downward walk can be a jump of h.
        if value == 0.0 and (direction > 0 or acc > 0):
            return TailOutcome(acc, False)
        if value > 0 and rate > 0:
            remainder = value / rate
            if remainder <= rel_tol * max(abs(acc + scale), 1e-300):
                return TailOutcome(acc + remainder, False)
        if abs(x) >= LOG_CUTOFF:
            if rate <= 0:
                return TailOutcome(math.inf, True)
            raise QuadratureError(
                f"tail still contributes ~{value / rate:.3g} at log s = {x:.0f}; not certified finite"
            )
        nxt = x + direction * TAIL_STEP
        a, b = (x, nxt) if direction > 0 else (nxt, x)
        acc += integrate_panel(g, a, b, rel_tol)
        x = nxt
