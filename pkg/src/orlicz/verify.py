"""Seeded invariant suites, one per labelled result.

Each suite returns ``(passed, failed, witness)`` where ``witness`` is the
first failing case in a fixed order. Random draws come from a generator
keyed on ``(seed, label)``, so a suite's outcome does not depend on which
other suites run.
"""

from __future__ import annotations

import math
import zlib
from typing import Any, Callable, Iterable

import numpy as np

from .config import DEFAULT, SATURATION, ToleranceConfig
from .funcspace import (
    Ball,
    RadialPowerFunction,
    SampleSpec,
    char_function,
    random_pair_same_partition,
    random_simple_function,
    random_supported_in,
)
from .inclusion import (
    ball_sweep,
    bounded_domain_inclusion,
    dominates,
    empirical_norm_inequality,
    find_min_constant,
    holder_triple_check,
    inclusion_verdict,
    inverse_cross_check,
    lebesgue_triple,
    product_norm_bound,
    radial_separation_witness,
    scaled_inverse_cross_check,
)
from .norms import char_norm_closed_form, luxemburg_norm, modular, weak_norm
from .young import (
    ArgScale,
    ExpMinusOne,
    Max,
    PiecewiseLinearConvex,
    Power,
    PowerLog,
    Sum,
    ValScale,
    YoungFunction,
    generalized_inverse,
    is_positive,
    validate_young,
)

LABELS = (
    "YF", "L1.1.1", "L1.1.2", "L1.1.3", "L1.1.4", "L1.1.5",
    "L2.1", "L2.2", "C2.3", "L2.4", "T2.5", "L2.6", "C2.7", "C2.8",
    "T3.1", "L3.2", "T3.3", "§4",
)
ALIASES = {"S4": "§4"}

# vanishes on [0, 1]: the inverse at 0 is 1, not 0
VANISHING = PiecewiseLinearConvex(((0.0, 0.0), (1.0, 0.0), (2.0, 1.0)))


def standard_functions() -> list[YoungFunction]:
    return [
        Power(1),
        Power(2),
        Power(3.5),
        ExpMinusOne(),
        PowerLog(1, 1),
        PowerLog(2, 0.5),
        PiecewiseLinearConvex(((0.0, 0.0), (1.0, 1.0), (2.0, 3.0))),
        ArgScale(2.0, Power(2)),
        ValScale(0.25, Power(2)),
        Sum((Power(1), Power(2))),
        Max((Power(1.5), ExpMinusOne())),
    ]


def _rng(seed: int, label: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(label.encode())])


class _Tally:
    def __init__(self) -> None:
        self.passed = 0
        self.failed = 0
        self.witness: dict[str, Any] | None = None
        self.notes: list[dict[str, Any]] = []

    def record(self, ok: bool, witness: Callable[[], dict[str, Any]] | dict[str, Any]) -> None:
        if ok:
            self.passed += 1
            return
        self.failed += 1
        if self.witness is None:
            self.witness = witness() if callable(witness) else witness

    def to_json(self) -> dict[str, Any]:
        out = {"passed": self.passed, "failed": self.failed, "witness": self.witness}
        if self.notes:
            out["notes"] = self.notes
        return out


def _log_uniform(rng, lo, hi, size):
    return np.exp(rng.uniform(math.log(lo), math.log(hi), size))


# ---------------------------------------------------------------------------
# young


def suite_young_axioms(ctx: "Context") -> _Tally:
    tally = _Tally()
    for phi in ctx.functions:
        rep = validate_young(phi, ctx.cfg)
        tally.record(rep.ok, lambda rep=rep: {
            "phi": rep.phi.to_json(),
            "failed_checks": {k: rep.checks[k].to_json() for k in rep.failures()},
        })
    return tally


def suite_inverse_at_zero(ctx: "Context") -> _Tally:
    tally = _Tally()
    for phi in ctx.functions:
        if not is_positive(phi, ctx.cfg):
            tally.notes.append({"phi": phi.to_json(), "skipped": "not positive on (0, inf)"})
            continue
        v = float(generalized_inverse(phi, 0.0, ctx.cfg))
        tally.record(v == 0.0, {"phi": phi.to_json(), "inverse_at_0": v})
    v = float(generalized_inverse(VANISHING, 0.0, ctx.cfg))
    tally.notes.append({"phi": VANISHING.to_json(), "inverse_at_0": v,
                        "documented": "vanishes on [0, 1]; inverse at 0 is the edge of the zero set"})
    return tally


def _samples(ctx, label, n=1000):
    rng = _rng(ctx.seed, label)
    lo, hi = ctx.cfg.grid_range
    return rng, _log_uniform(rng, lo, hi, n)


def suite_inverse_monotone(ctx: "Context") -> _Tally:
    tally = _Tally()
    rng, s1 = _samples(ctx, "L1.1.2")
    s2 = s1 * _log_uniform(rng, 1.0, 1e3, s1.size)
    slack = 2 * ctx.cfg.rel_tol
    for phi in ctx.functions:
        a = generalized_inverse(phi, s1, ctx.cfg)
        b = generalized_inverse(phi, s2, ctx.cfg)
        for i in range(s1.size):
            tally.record(a[i] <= b[i] * (1 + slack) + ctx.cfg.abs_tol,
                         lambda i=i: {"phi": phi.to_json(), "s1": s1[i], "s2": s2[i],
                                      "inv_s1": float(a[i]), "inv_s2": float(b[i])})
    return tally


def suite_inverse_sandwich(ctx: "Context") -> _Tally:
    """Checked with the slack on the argument side: the inverse is only known to rel_tol."""
    tally = _Tally()
    _, s = _samples(ctx, "L1.1.3")
    slack = 2 * ctx.cfg.rel_tol
    for phi in ctx.functions:
        r = generalized_inverse(phi, s, ctx.cfg)
        below = phi(r * (1 - slack))
        phi_s = phi(s)
        ok_t = phi_s < SATURATION
        back = generalized_inverse(phi, np.where(ok_t, phi_s, 0.0), ctx.cfg)
        for i in range(s.size):
            ok = below[i] <= s[i] and (not ok_t[i] or s[i] <= back[i] * (1 + slack) + ctx.cfg.abs_tol)
            tally.record(ok, lambda i=i: {"phi": phi.to_json(), "s": s[i], "inverse": float(r[i]),
                                          "phi_of_inverse": float(phi(r[i])),
                                          "inverse_of_phi": float(back[i])})
    return tally


def _pairs(ctx, label, n):
    rng = _rng(ctx.seed, label)
    fs = ctx.functions
    out = []
    for _ in range(n):
        i, j = rng.integers(len(fs), size=2)
        out.append((fs[i], fs[j], float(_log_uniform(rng, 0.1, 10.0, 1)[0])))
    return out


def suite_inverse_domination(ctx: "Context") -> _Tally:
    tally = _Tally()
    for phi1, phi2, C in _pairs(ctx, "L1.1.4", 40):
        rep = inverse_cross_check(phi1, phi2, C, ctx.cfg)
        tally.record(rep.agree, lambda rep=rep, a=phi1, b=phi2: {
            "phi1": a.to_json(), "phi2": b.to_json(), **rep.to_json()})
    return tally


def suite_inverse_scaling(ctx: "Context") -> _Tally:
    tally = _Tally()
    for phi1, phi2, C in _pairs(ctx, "L1.1.5", 40):
        fwd, inv = scaled_inverse_cross_check(phi1, phi2, C, ctx.cfg)
        tally.record(fwd == inv, {"phi1": phi1.to_json(), "phi2": phi2.to_json(), "C": C,
                                  "forward_holds": fwd, "inverse_holds": inv})
    return tally


def suite_contraction(ctx: "Context") -> _Tally:
    tally = _Tally()
    rng, t = _samples(ctx, "L2.1")
    alpha = rng.uniform(0.0, 1.0, t.size)
    for phi in ctx.functions:
        phi_t = phi(t)
        lhs, rhs = phi(alpha * t), alpha * phi_t
        usable = phi_t < SATURATION
        for i in range(t.size):
            ok = not usable[i] or lhs[i] <= rhs[i] * (1 + 10 * ctx.cfg.rel_tol) + ctx.cfg.abs_tol
            tally.record(ok, lambda i=i: {"phi": phi.to_json(), "t": t[i], "alpha": alpha[i],
                                          "phi_alpha_t": float(lhs[i]), "alpha_phi_t": float(rhs[i])})
    return tally


# ---------------------------------------------------------------------------
# norms


def _norm_functions() -> list[YoungFunction]:
    return [Power(1), Power(2), ExpMinusOne(), PowerLog(1, 1), Max((Power(1.5), ExpMinusOne()))]


def suite_norm_modular(ctx: "Context") -> _Tally:
    tally = _Tally()
    rng = _rng(ctx.seed, "L2.2")
    tol = 1e-8
    for _ in range(40):
        f = random_simple_function(rng)
        for phi in _norm_functions():
            n = luxemburg_norm(f, phi, ctx.cfg).value
            m = modular(f, phi, n, ctx.cfg)
            tally.record(m <= 1 + tol, {"f": f.to_json(), "phi": phi.to_json(), "norm": n, "modular_at_norm": m})
            # unit ball: away from the boundary both sides must agree
            for k in (0.5, 2.0):
                g = f.scaled(k / n)
                inside = luxemburg_norm(g, phi, ctx.cfg).value <= 1 + tol
                tally.record(inside == (modular(g, phi, 1.0, ctx.cfg) <= 1 + tol),
                             {"f": g.to_json(), "phi": phi.to_json(), "scale": k})
    return tally


def _dominated_pairs() -> list[tuple[YoungFunction, YoungFunction]]:
    return [
        (Power(2), ValScale(0.25, Power(2))),
        (Power(1), Sum((Power(1), Power(2)))),
        (PowerLog(2, 1), Power(3)),
        (ExpMinusOne(), ArgScale(3.0, ExpMinusOne())),
    ]


def _separated_pairs() -> list[tuple[YoungFunction, YoungFunction]]:
    return [(Power(2), Power(1)), (Power(2), Power(3)), (ExpMinusOne(), Power(4))]


def _transfer(ctx, label, weak):
    tally = _Tally()
    for k, (phi, psi) in enumerate(_dominated_pairs()):
        C = find_min_constant(phi, psi, ctx.cfg)
        if C is None:
            tally.record(False, {"phi": phi.to_json(), "psi": psi.to_json(), "reason": "no constant"})
            continue
        spec = SampleSpec(n_samples=60, seed=ctx.seed + k, include_extremes=True)
        rep = empirical_norm_inequality(phi, psi, C, spec, weak, ctx.cfg)
        tally.record(rep.violations == 0, lambda rep=rep, a=phi, b=psi: {
            "phi": a.to_json(), "psi": b.to_json(), **rep.to_json()})
    return tally


def suite_certificate_transfer(ctx: "Context") -> _Tally:
    return _transfer(ctx, "C2.3", weak=False)


def _random_balls(rng, n):
    for _ in range(n):
        yield Ball(float(rng.uniform(0.1, 10.0)), int(rng.integers(1, 4)))


def _ball_norms(ctx, label, norm):
    tally = _Tally()
    rng = _rng(ctx.seed, label)
    for ball in _random_balls(rng, 50):
        phi = Power(float(rng.uniform(1.0, 8.0)))
        got = norm(char_function(ball), phi, ctx.cfg).value
        want = char_norm_closed_form(phi, ball.volume, ctx.cfg)
        tally.record(abs(got - want) <= 1e-8 * want, {"ball": ball.to_json(), "phi": phi.to_json(),
                                                      "norm": got, "closed_form": want})
    return tally


def suite_char_norm(ctx: "Context") -> _Tally:
    return _ball_norms(ctx, "L2.4", luxemburg_norm)


def suite_equivalence(ctx: "Context") -> _Tally:
    """Domination <=> ball sweep <=> no radial separation, on dominated and separated pairs."""
    tally = _Tally()
    for phi, psi in _dominated_pairs() + _separated_pairs():
        C = find_min_constant(phi, psi, ctx.cfg)
        witness = radial_separation_witness(phi, psi)
        tally.record((C is None) == (witness is not None), {
            "phi": phi.to_json(), "psi": psi.to_json(), "C": C,
            "radial_witness": None if witness is None else witness.to_json()})
        for C_try in ([C, 0.9 * C] if C is not None else [10.0]):
            cert = dominates(phi, psi, C_try, ctx.cfg)
            sweep = ball_sweep(phi, psi, C_try, ctx.cfg, count=513)
            tally.record(cert.holds == sweep.holds, lambda c=cert, s=sweep, a=phi, b=psi: {
                "phi": a.to_json(), "psi": b.to_json(), "certificate": c.to_json(), "ball_sweep": s.to_json()})
    return tally


def suite_product_bound(ctx: "Context") -> _Tally:
    tally = _Tally()
    rng = _rng(ctx.seed, "L2.6")
    triple = (Power(2), Power(2), Power(1))
    holder = holder_triple_check(*triple, ctx.cfg)
    for _ in range(200):
        f, g = random_pair_same_partition(rng)
        rep = product_norm_bound(f, g, *triple, ctx.cfg, holder=holder)
        tally.record(rep.ratio <= 2 + 1e-9, lambda rep=rep, f=f, g=g: {
            "f": f.to_json(), "g": g.to_json(), **rep.to_json()})
    return tally


def _bounded(ctx, label, p1, p2, balls):
    tally = _Tally()
    rng = _rng(ctx.seed, label)
    phi1, aux, phi2 = lebesgue_triple(p1, p2)
    holder = holder_triple_check(phi1, aux, phi2, ctx.cfg)
    for ball in balls(rng):
        f = random_supported_in(rng, ball)
        rep = bounded_domain_inclusion(f, ball, phi1, phi2, aux, ctx.cfg, holder=holder)
        tally.record(rep.holds, lambda rep=rep, f=f, b=ball: {
            "f": f.to_json(), "ball": b.to_json(), "p1": p1, "p2": p2, **rep.to_json()})
    return tally


def suite_bounded_domain(ctx: "Context") -> _Tally:
    tally = _Tally()
    for p1, p2 in ((3.0, 1.5), (4.0, 2.0), (2.5, 1.0)):
        sub = _bounded(ctx, f"C2.7:{p1}:{p2}", p1, p2, lambda rng: _random_balls(rng, 30))
        tally.passed += sub.passed
        tally.failed += sub.failed
        tally.witness = tally.witness or sub.witness
    return tally


def suite_lebesgue_ball(ctx: "Context") -> _Tally:
    return _bounded(ctx, "C2.8", 2.0, 1.0, lambda rng: (Ball(1.0, 1) for _ in range(100)))


# ---------------------------------------------------------------------------
# weak spaces


def suite_weak_le_strong(ctx: "Context") -> _Tally:
    tally = _Tally()
    fs = SampleSpec(n_samples=500, seed=ctx.seed).generate()
    for phi in _norm_functions():
        for f in fs:
            w = weak_norm(f, phi, ctx.cfg).value
            s = luxemburg_norm(f, phi, ctx.cfg).value
            tally.record(w <= s * (1 + 1e-9), lambda f=f, w=w, s=s: {
                "f": f.to_json(), "phi": phi.to_json(), "weak": w, "strong": s})
    # the inclusion is proper: |x|^(-n/p) is in the weak space only
    for p in (1.0, 2.0, 3.0):
        f = RadialPowerFunction(1.0, 1.0 / p, 1)
        w = weak_norm(f, Power(p), ctx.cfg)
        s = luxemburg_norm(f, Power(p), ctx.cfg)
        tally.record(not w.infinite and s.infinite, {"f": f.to_json(), "p": p,
                                                     "weak": w.to_json(), "strong": s.to_json()})
    return tally


def suite_weak_char_norm(ctx: "Context") -> _Tally:
    return _ball_norms(ctx, "L3.2", weak_norm)


def suite_weak_inclusion(ctx: "Context") -> _Tally:
    tally = _transfer(ctx, "T3.3", weak=True)
    for phi, psi in _separated_pairs():
        witness = radial_separation_witness(phi, psi, weak=True)
        tally.record(witness is not None, {"phi": phi.to_json(), "psi": psi.to_json(),
                                           "reason": "no weak separation witness"})
    return tally


def suite_five_way(ctx: "Context") -> _Tally:
    tally = _Tally()
    spec = SampleSpec(n_samples=40, seed=ctx.seed, include_extremes=True)
    cases = [(Power(2), ValScale(0.25, Power(2)), "holds"),
             (Power(2), Power(2), "holds"),
             (Power(2), Power(1), "fails")]
    for phi, psi, expected in cases:
        v = inclusion_verdict(phi, psi, ctx.cfg, spec)
        tally.record(v.status == expected, lambda v=v: v.to_json())
    return tally


SUITES: dict[str, Callable[["Context"], _Tally]] = {
    "YF": suite_young_axioms,
    "L1.1.1": suite_inverse_at_zero,
    "L1.1.2": suite_inverse_monotone,
    "L1.1.3": suite_inverse_sandwich,
    "L1.1.4": suite_inverse_domination,
    "L1.1.5": suite_inverse_scaling,
    "L2.1": suite_contraction,
    "L2.2": suite_norm_modular,
    "C2.3": suite_certificate_transfer,
    "L2.4": suite_char_norm,
    "T2.5": suite_equivalence,
    "L2.6": suite_product_bound,
    "C2.7": suite_bounded_domain,
    "C2.8": suite_lebesgue_ball,
    "T3.1": suite_weak_le_strong,
    "L3.2": suite_weak_char_norm,
    "T3.3": suite_weak_inclusion,
    "§4": suite_five_way,
}


class Context:
    def __init__(self, cfg: ToleranceConfig, seed: int, extra: Iterable[YoungFunction] = ()):
        self.cfg = cfg
        self.seed = seed
        self.functions = standard_functions() + list(extra)


def resolve_labels(only: Iterable[str] | None) -> list[str]:
    if not only:
        return list(LABELS)
    out = []
    for label in only:
        label = ALIASES.get(label, label)
        if label not in SUITES:
            raise KeyError(label)
        out.append(label)
    return [l for l in LABELS if l in out]


def run_suites(cfg: ToleranceConfig = DEFAULT, seed: int = 42, only: Iterable[str] | None = None,
               extra_functions: Iterable[YoungFunction] = ()) -> dict[str, Any]:
    """Run the selected suites; the report is ordered by label and deterministic in ``(cfg, seed)``."""
    ctx = Context(cfg, seed, extra_functions)
    suites = {label: SUITES[label](ctx).to_json() for label in resolve_labels(only)}
    return {
        "seed": seed,
        "config": cfg.to_dict(),
        "suites": suites,
        "ok": all(s["failed"] == 0 for s in suites.values()),
    }
