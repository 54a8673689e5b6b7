"""Modular, Luxemburg norm and weak Orlicz quasi-norm.

For a function ``f`` and Young function ``phi``::

    modular(f, phi, b)   = int phi(|f| / b) dx
    luxemburg_norm(f)    = inf{b > 0 : modular(f, phi, b) <= 1}
    weak_sup(f, phi, b)  = sup_{t > 0} phi(t) |{|f| / b > t}|
    weak_norm(f)         = inf{b > 0 : weak_sup(f, phi, b) <= 1}

Simple functions are handled by exact finite sums. Radial powers go through
the layer-cake identity ``int_0^inf d_f(b * inv(s)) ds`` with divergence
decided from the asymptotic growth of ``phi`` whenever it is recognized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.optimize import minimize_scalar

from . import _kernels
from .config import DEFAULT, ToleranceConfig
from .funcspace import Function, RadialPowerFunction, SimpleFunction, unit_ball_volume
from .quadrature import QuadratureError, integrate_log, integrate_tail
from .solve import bisect_infimum
from .young import YoungFunction, as_power_law, generalized_inverse


@dataclass
class NormResult:
    """Outcome of a norm computation. ``value`` is ``inf`` for functions outside the space."""

    value: float
    iterations: int = 0
    bracket: tuple[float, float] = (0.0, 0.0)
    converged: bool = True
    status: str = "ok"
    evaluations: int = field(default=0, compare=False)

    @property
    def infinite(self) -> bool:
        return math.isinf(self.value)

    def __float__(self) -> float:
        return float(self.value)

    def to_json(self) -> dict[str, Any]:
        lo, hi = self.bracket
        return {
            "value": None if not math.isfinite(self.value) else self.value,
            "infinite": self.infinite,
            "converged": self.converged,
            "iterations": self.iterations,
            "bracket": [x if math.isfinite(x) else None for x in (lo, hi)],
            "status": self.status,
        }


# ---------------------------------------------------------------------------
# tail analysis for radial powers


def _tail_at_infinity_finite(phi: YoungFunction, beta: float) -> bool | None:
    """Does ``int^inf phi(u) u**(-beta-1) du`` converge?"""
    g = phi.growth_at_infinity()
    if g is None:
        return None
    if g.rate > 0 or g.power > beta:
        return False
    if g.power < beta:
        return True
    return g.log_power < -1


def _tail_at_zero_finite(phi: YoungFunction, beta: float) -> bool | None:
    """Does ``int_0 phi(u) u**(-beta-1) du`` converge?"""
    g = phi.growth_at_zero()
    if g is None:
        return None
    return math.isinf(g.power) or g.power > beta


def radial_modular_finite(f: RadialPowerFunction, phi: YoungFunction) -> bool | None:
    """Finiteness of the modular of a radial power; independent of the scale ``b``.

    Substituting ``u = c |x|**(-alpha) / b`` turns the modular into a constant
    times ``int phi(u) u**(-beta-1) du`` over ``(inf_level/b, sup_level/b)``
    with ``beta = dim/alpha``. Returns None when an unbounded end involves an
    expression tree whose asymptotics are not recognized.
    """
    beta = f.exponent
    verdicts = []
    if math.isinf(f.sup_level):
        verdicts.append(_tail_at_infinity_finite(phi, beta))
    if f.inf_level == 0:
        verdicts.append(_tail_at_zero_finite(phi, beta))
    if False in verdicts:
        return False
    if None in verdicts:
        return None
    return True


# ---------------------------------------------------------------------------
# modular


def simple_modular(f: SimpleFunction, phi: YoungFunction, b: float) -> float:
    return _kernels.simple_modular(*phi.program, f.values, f.measures, float(b))


def layer_cake_modular(f: Function, phi: YoungFunction, b: float,
                       cfg: ToleranceConfig = DEFAULT) -> float:
    """``int_0^inf d_f(b * inv(s)) ds`` by quadrature.

    Works for any function exposing ``distribution``, ``inf_level``,
    ``sup_level``, ``support_measure`` and ``breakpoints``. Returns ``inf``
    when a tail stops decaying; raises :class:`QuadratureError` when a tail
    decays too slowly to certify.
    """
    b = float(b)
    if f.is_zero:
        return 0.0

    def h(s: np.ndarray) -> np.ndarray:
        return f.distribution(b * generalized_inverse(phi, s, cfg))

    s_lo = phi(f.inf_level / b) if f.inf_level > 0 else 0.0
    s_hi = phi(f.sup_level / b) if math.isfinite(f.sup_level) else math.inf
    # below s_lo every point of the support counts
    head = s_lo * f.support_measure if s_lo > 0 else 0.0
    breaks = [phi(lam / b) for lam in f.breakpoints()]

    finite_pts = sorted(p for p in [s_lo, s_hi, *breaks] if 0 < p < math.inf)
    if not finite_pts:
        finite_pts = [1.0]
    a, z = finite_pts[0], finite_pts[-1]
    body = integrate_log(h, a, z, finite_pts, cfg.rel_tol) if z > a else 0.0
    total = head + body
    if s_lo == 0:
        tail = integrate_tail(h, a, -1, total, cfg.rel_tol)
        if tail.diverges:
            return math.inf
        total += tail.value
    if math.isinf(s_hi):
        tail = integrate_tail(h, z, +1, total, cfg.rel_tol)
        if tail.diverges:
            return math.inf
        total += tail.value
    return total


def modular(f: Function, phi: YoungFunction, b: float, cfg: ToleranceConfig = DEFAULT) -> float:
    """``int phi(|f| / b) dx``; ``inf`` when certified divergent."""
    if not (b > 0):
        raise ValueError(f"b must be positive, got {b}")
    if isinstance(f, SimpleFunction):
        return simple_modular(f, phi, b)
    if radial_modular_finite(f, phi) is False:
        return math.inf
    return layer_cake_modular(f, phi, b, cfg)


# ---------------------------------------------------------------------------
# weak supremum


def simple_weak_sup(f: SimpleFunction, phi: YoungFunction, b: float) -> float:
    levels, tails = f.level_tails()
    return _kernels.level_weak_sup(*phi.program, levels, tails, float(b))


def _radial_weak_limits(f: RadialPowerFunction, phi: YoungFunction, b: float) -> tuple[float, bool]:
    """Limits of ``phi(t) d_f(bt)`` at unbounded ends.

    Returns ``(best_limit, unknown)``; ``best_limit`` is ``inf`` when an end
    blows up.
    """
    beta = f.exponent
    scale = unit_ball_volume(f.dim) * (f.c / b) ** beta
    best = 0.0
    unknown = False
    if math.isinf(f.sup_level):
        g = phi.growth_at_infinity()
        if g is None:
            unknown = True
        elif g.rate > 0 or g.power > beta or (g.power == beta and g.log_power > 0):
            return math.inf, False
        elif g.power == beta:
            best = max(best, g.coef * scale)
    if f.inf_level == 0:
        g = phi.growth_at_zero()
        if g is None:
            unknown = True
        elif not math.isinf(g.power):
            if g.power < beta:
                return math.inf, False
            if g.power == beta:
                best = max(best, g.coef * scale)
    return best, unknown


def radial_weak_sup(f: RadialPowerFunction, phi: YoungFunction, b: float,
                    cfg: ToleranceConfig = DEFAULT) -> float:
    b = float(b)
    beta = f.exponent
    power_law = as_power_law(phi)
    if f.is_global and power_law is not None:
        a, p = power_law
        if math.isclose(p, beta, rel_tol=1e-12):
            # phi(t) d_f(bt) = a v_n (c/b)^beta t^(p - beta) is constant in t
            return a * unit_ball_volume(f.dim) * (f.c / b) ** beta
        return math.inf

    limit, unknown = _radial_weak_limits(f, phi, b)
    if math.isinf(limit):
        return math.inf

    def product(t: np.ndarray) -> np.ndarray:
        return phi(t) * f.distribution(b * t)

    t_lo = f.inf_level / b if f.inf_level > 0 else cfg.grid_range[0]
    t_hi = f.sup_level / b if math.isfinite(f.sup_level) else cfg.grid_range[1]
    best = max(limit, float(product(np.array([t_lo]))[0]))
    while True:
        t = np.logspace(math.log10(t_lo), math.log10(t_hi), 2049)
        vals = product(t)
        i = int(np.argmax(vals))
        best = max(best, float(vals[i]))
        if 0 < i < t.size - 1:
            # refine in log t around the grid maximizer
            res = minimize_scalar(lambda x: -float(product(np.array([math.exp(x)]))[0]),
                                  bounds=(math.log(t[i - 1]), math.log(t[i + 1])), method="bounded",
                                  options={"xatol": 1e-12})
            best = max(best, -float(res.fun))
            return best
        if not unknown:
            return best
        # maximizer sits on an open end with unrecognized asymptotics: widen
        grew = False
        if i == 0 and f.inf_level == 0 and t_lo > 1e-290:
            t_lo, grew = t_lo * 1e-8, True
        if i == t.size - 1 and math.isinf(f.sup_level) and t_hi < 1e290:
            t_hi, grew = t_hi * 1e8, True
        if not grew:
            edge_increasing = vals[i] > vals[i + 1 if i == 0 else i - 1]
            return math.inf if edge_increasing else best


def weak_sup(f: Function, phi: YoungFunction, b: float, cfg: ToleranceConfig = DEFAULT) -> float:
    """``sup_{t > 0} phi(t) |{|f| / b > t}|``."""
    if not (b > 0):
        raise ValueError(f"b must be positive, got {b}")
    if isinstance(f, SimpleFunction):
        return simple_weak_sup(f, phi, b)
    return radial_weak_sup(f, phi, b, cfg)


# ---------------------------------------------------------------------------
# norms


def _norm(f: Function, functional, cfg: ToleranceConfig) -> NormResult:
    if f.is_zero:
        return NormResult(0.0, status="zero")
    calls = 0

    def feasible(b: float) -> bool:
        nonlocal calls
        calls += 1
        return functional(b) <= 1.0

    try:
        if math.isinf(functional(1.0)) and isinstance(f, RadialPowerFunction):
            # radial powers scale: an infinite value at one b is infinite at every b
            return NormResult(math.inf, 0, (math.inf, math.inf), True, "infinite", 1)
        inf_ = bisect_infimum(feasible, cfg.rel_tol, cfg.max_bisect_iters)
    except QuadratureError as exc:
        return NormResult(math.nan, calls, (math.nan, math.nan), False, f"quadrature: {exc}", calls)
    status = {"ok": "ok", "unbounded": "infinite", "max_iter": "max_iter", "zero": "zero"}[inf_.status]
    return NormResult(inf_.value, inf_.iterations, (inf_.lo, inf_.hi), inf_.converged, status, calls)


def luxemburg_norm(f: Function, phi: YoungFunction, cfg: ToleranceConfig = DEFAULT) -> NormResult:
    """``inf{b > 0 : modular(f, phi, b) <= 1}`` by monotone bisection on ``b``."""
    return _norm(f, lambda b: modular(f, phi, b, cfg), cfg)


def weak_norm(f: Function, phi: YoungFunction, cfg: ToleranceConfig = DEFAULT) -> NormResult:
    """``inf{b > 0 : weak_sup(f, phi, b) <= 1}`` by monotone bisection on ``b``."""
    return _norm(f, lambda b: weak_sup(f, phi, b, cfg), cfg)


def char_norm_closed_form(phi: YoungFunction, measure: float, cfg: ToleranceConfig = DEFAULT) -> float:
    """Norm of an indicator of a set of the given measure: ``1 / inv(1 / measure)``.

    The same value is the Luxemburg norm and the weak norm.
    """
    if not (measure > 0 and math.isfinite(measure)):
        raise ValueError(f"measure must be positive and finite, got {measure}")
    inv = generalized_inverse(phi, 1.0 / measure, cfg)
    if inv == 0.0:
        raise ZeroDivisionError(f"inverse vanishes at 1/{measure:g}")
    return 1.0 / inv
