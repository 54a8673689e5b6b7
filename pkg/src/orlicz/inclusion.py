"""Inclusion between Orlicz and weak Orlicz spaces on R^n.

``L_psi`` embeds in ``L_phi`` (and ``wL_psi`` in ``wL_phi``) exactly when
``phi(t) <= psi(C t)`` for all ``t > 0`` and some ``C``. This module checks
that domination on a log grid backed by an asymptotic comparison at both
ends, searches for the smallest ``C``, and cross-checks the statement against
sampled norm inequalities, ball indicators and radial-power witnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .config import DEFAULT, SATURATION, ToleranceConfig
from .funcspace import (
    Ball,
    RadialPowerFunction,
    SampleSpec,
    SimpleFunction,
    pointwise_product,
)
from .norms import (
    _radial_weak_limits,
    char_norm_closed_form,
    luxemburg_norm,
    radial_modular_finite,
    weak_norm,
)
from .solve import bisect_infimum
from .young import (
    Power,
    YoungFunction,
    compare_at_infinity,
    compare_at_zero,
    generalized_inverse,
)

#: relative slack for comparisons between numerically inverted quantities
INVERSE_SLACK = 10.0


class InconclusiveError(RuntimeError):
    """Grid evidence passes but the asymptotics of an expression tree are not recognized."""


class PreconditionError(ValueError):
    """A hypothesis required by a check does not hold."""


def _side(cmp: int | None) -> str:
    if cmp is None:
        return "unknown"
    return {-1: "holds", 0: "tie", 1: "fails"}[cmp]


def _inverse_tol(cfg: ToleranceConfig) -> float:
    return INVERSE_SLACK * cfg.rel_tol


# ---------------------------------------------------------------------------
# domination


@dataclass
class DominationCertificate:
    """Evidence for ``phi(t) <= psi(C t)``.

    ``min_margin`` is the minimum over the grid of
    ``(psi(Ct) - phi(t)) / max(1, phi(t))``; grid points where both sides
    saturate are skipped and counted in ``saturated``.
    """

    C: float
    mode: str
    T: float | None
    grid: tuple[float, float, int]
    min_margin: float
    asymptotic_note: dict[str, str]
    verdict: str
    witness: float | None = None
    saturated: int = 0

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    def to_json(self) -> dict[str, Any]:
        return {
            "C": self.C,
            "mode": self.mode,
            "T": self.T,
            "grid": {"t_min": self.grid[0], "t_max": self.grid[1], "count": self.grid[2]},
            "min_margin": self.min_margin,
            "asymptotic_note": dict(self.asymptotic_note),
            "verdict": self.verdict,
            "witness": self.witness,
            "saturated": self.saturated,
        }


def _margins(phi, psi, C, t):
    a, b = phi(t), psi(C * t)
    usable = ~((a >= SATURATION) & (b >= SATURATION))
    margin = (b - a) / np.maximum(1.0, a)
    return margin, usable


def _asymptotics(phi, psi, C, cfg, *, zero_side: bool) -> dict[str, str]:
    note = {}
    g_phi, g_psi = phi.growth_at_infinity(), psi.growth_at_infinity()
    cmp = None if g_phi is None or g_psi is None else compare_at_infinity(g_phi, g_psi.arg_scaled(C), cfg.abs_tol)
    note["infinity"] = _side(cmp)
    if zero_side:
        g_phi, g_psi = phi.growth_at_zero(), psi.growth_at_zero()
        cmp = None if g_phi is None or g_psi is None else compare_at_zero(g_phi, g_psi.arg_scaled(C), cfg.abs_tol)
        note["zero"] = _side(cmp)
    return note


def _probe_witness(phi, psi, C, cfg, start: float, factor: float) -> float | None:
    t = start
    while 1e-300 < t < 1e300:
        t *= factor
        margin, usable = _margins(phi, psi, C, np.array([t]))
        if usable[0] and margin[0] < -cfg.abs_tol:
            return t
    return None


def _certify(phi, psi, C, t, cfg, note, mode, T) -> DominationCertificate:
    margin, usable = _margins(phi, psi, C, t)
    grid = (float(t[0]), float(t[-1]), int(t.size))
    saturated = int((~usable).sum())
    m = np.where(usable, margin, np.inf)
    worst = int(np.argmin(m))
    min_margin = float(m[worst]) if np.isfinite(m[worst]) else 0.0
    if min_margin < -cfg.abs_tol:
        return DominationCertificate(C, mode, T, grid, min_margin, note, "fails", float(t[worst]), saturated)
    if note.get("infinity") == "fails" or note.get("zero") == "fails":
        witness = None
        if note.get("infinity") == "fails":
            witness = _probe_witness(phi, psi, C, cfg, t[-1], 16.0)
        if witness is None and note.get("zero") == "fails":
            witness = _probe_witness(phi, psi, C, cfg, t[0], 1 / 16.0)
        return DominationCertificate(C, mode, T, grid, min_margin, note, "fails", witness, saturated)
    if "unknown" in note.values():
        return DominationCertificate(C, mode, T, grid, min_margin, note, "inconclusive", None, saturated)
    return DominationCertificate(C, mode, T, grid, min_margin, note, "holds", None, saturated)


def dominates(phi: YoungFunction, psi: YoungFunction, C: float,
              cfg: ToleranceConfig = DEFAULT) -> DominationCertificate:
    """Check ``phi(t) <= psi(C t)`` for every ``t > 0``."""
    if not (C > 0):
        raise ValueError("C must be positive")
    note = _asymptotics(phi, psi, C, cfg, zero_side=True)
    return _certify(phi, psi, C, cfg.grid(), cfg, note, "everywhere", None)


def eventually_dominates(phi: YoungFunction, psi: YoungFunction, C: float, T: float,
                         cfg: ToleranceConfig = DEFAULT) -> DominationCertificate:
    """Check ``phi(t) <= psi(C t)`` for every ``t >= T``."""
    if not (C > 0 and T > 0):
        raise ValueError("C and T must be positive")
    t_hi = max(cfg.grid_range[1], T * 1e8)
    t = np.logspace(math.log10(T), math.log10(t_hi), cfg.grid_points)
    note = _asymptotics(phi, psi, C, cfg, zero_side=False)
    return _certify(phi, psi, C, t, cfg, note, "eventually", T)


def constant_exists(phi: YoungFunction, psi: YoungFunction) -> bool | None:
    """Whether the asymptotics leave room for some ``C`` with ``phi(t) <= psi(Ct)``."""
    gi_phi, gi_psi = phi.growth_at_infinity(), psi.growth_at_infinity()
    g0_phi, g0_psi = phi.growth_at_zero(), psi.growth_at_zero()
    if None in (gi_phi, gi_psi, g0_phi, g0_psi):
        return None
    # at infinity, C rescales exponential rates and power coefficients only
    if gi_phi.rate > 0 and gi_psi.rate == 0:
        return False
    if gi_phi.rate == 0 and gi_psi.rate == 0:
        if (gi_phi.power, gi_phi.log_power) > (gi_psi.power, gi_psi.log_power):
            return False
    # near zero a lower power (or a psi that vanishes) cannot be compensated
    if math.isinf(g0_psi.power) and not math.isinf(g0_phi.power):
        return False
    if g0_phi.power < g0_psi.power:
        return False
    return True


def find_min_constant(phi: YoungFunction, psi: YoungFunction,
                      cfg: ToleranceConfig = DEFAULT) -> float | None:
    """Smallest ``C`` (to ``rel_tol``) with ``phi(t) <= psi(C t)``; None if no C exists.

    Raises :class:`InconclusiveError` for trees whose asymptotics are unknown.
    """
    exists = constant_exists(phi, psi)
    if exists is False:
        return None
    if exists is None:
        raise InconclusiveError("asymptotic growth of the expression tree is not recognized")

    def holds(C: float) -> bool:
        cert = dominates(phi, psi, C, cfg)
        if cert.verdict == "inconclusive":  # pragma: no cover - guarded by constant_exists
            raise InconclusiveError("domination inconclusive")
        return cert.holds

    res = bisect_infimum(holds, cfg.rel_tol, cfg.max_bisect_iters)
    if res.status == "unbounded":
        return None
    C = res.hi
    # prefer the shortest decimal that still certifies
    rounded = float(f"{C:.10g}")
    if res.lo < rounded < C and holds(rounded):
        C = rounded
    return C


# ---------------------------------------------------------------------------
# inverse-side checks


@dataclass
class CrossCheckReport:
    C: float
    forward_holds: bool
    inverse_holds: bool
    forward_witness: float | None
    inverse_witness: float | None
    t_grid: tuple[float, float, int]
    s_grid: tuple[float, float, int]

    @property
    def agree(self) -> bool:
        return self.forward_holds == self.inverse_holds

    def to_json(self) -> dict[str, Any]:
        return {
            "C": self.C,
            "forward_holds": self.forward_holds,
            "inverse_holds": self.inverse_holds,
            "agree": self.agree,
            "forward_witness_t": self.forward_witness,
            "inverse_witness_s": self.inverse_witness,
            "t_grid": list(self.t_grid),
            "s_grid": list(self.s_grid),
        }


def _image_grid(phi, psi, C, cfg) -> np.ndarray:
    t = cfg.grid()
    vals = np.concatenate([phi(t), psi(C * t)])
    pos = vals[(vals > 0) & (vals < SATURATION)]
    s_min = max(float(pos.min()), 1e-290) if pos.size else cfg.grid_range[0]
    s_max = min(float(pos.max()), 1e290) if pos.size else cfg.grid_range[1]
    # geometric midpoints: never coincides with images of the t grid
    edges = np.linspace(math.log10(s_min), math.log10(s_max), cfg.grid_points + 1)
    return 10.0 ** (0.5 * (edges[:-1] + edges[1:]))


def inverse_cross_check(phi: YoungFunction, psi: YoungFunction, C: float,
                        cfg: ToleranceConfig = DEFAULT) -> CrossCheckReport:
    """Compare ``phi(t) <= psi(Ct)`` on a t grid with ``C inv_phi(s) >= inv_psi(s)`` on an s grid."""
    t = cfg.grid()
    margin, usable = _margins(phi, psi, C, t)
    bad = np.flatnonzero(usable & (margin < -cfg.abs_tol))
    fwd_witness = float(t[bad[np.argmin(margin[bad])]]) if bad.size else None

    s = _image_grid(phi, psi, C, cfg)
    lhs = C * generalized_inverse(phi, s, cfg)
    rhs = generalized_inverse(psi, s, cfg)
    slack = _inverse_tol(cfg)
    inv_bad = np.flatnonzero(lhs < rhs * (1 - slack))
    inv_witness = float(s[inv_bad[np.argmin((lhs / rhs)[inv_bad])]]) if inv_bad.size else None
    return CrossCheckReport(
        C, fwd_witness is None, inv_witness is None, fwd_witness, inv_witness,
        (float(t[0]), float(t[-1]), int(t.size)), (float(s[0]), float(s[-1]), int(s.size)),
    )


def scaled_inverse_cross_check(phi1: YoungFunction, phi2: YoungFunction, C: float,
                               cfg: ToleranceConfig = DEFAULT) -> tuple[bool, bool]:
    """Both sides of ``phi1 <= C phi2  <=>  inv_phi1(C s) >= inv_phi2(s)`` on grids."""
    t = cfg.grid()
    a, b = phi1(t), phi2(t)
    usable = ~((a >= SATURATION) & (C * b >= SATURATION))
    forward = bool(np.all(~usable | (a <= C * b + cfg.abs_tol * np.maximum(1.0, a))))
    s = _image_grid(phi1, phi2, 1.0, cfg)
    s = s[C * s < 1e290]
    lhs = generalized_inverse(phi1, C * s, cfg)
    rhs = generalized_inverse(phi2, s, cfg)
    inverse = bool(np.all(lhs >= rhs * (1 - _inverse_tol(cfg))))
    return forward, inverse


@dataclass
class HolderCertificate:
    verdict: str
    min_margin: float
    witness: float | None
    grid: tuple[float, float, int]

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    def to_json(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict,
            "min_margin": self.min_margin,
            "witness_s": self.witness,
            "grid": {"s_min": self.grid[0], "s_max": self.grid[1], "count": self.grid[2]},
        }


def holder_triple_check(phi1: YoungFunction, phi2: YoungFunction, phi3: YoungFunction,
                        cfg: ToleranceConfig = DEFAULT) -> HolderCertificate:
    """Grid check of ``inv_phi1(s) * inv_phi2(s) <= inv_phi3(s)``.

    ``min_margin`` is the smallest ``1 - product / inv_phi3``; products within
    the inversion slack of ``inv_phi3`` count as equal.
    """
    s = np.concatenate([[0.0], cfg.grid()])
    prod = generalized_inverse(phi1, s, cfg) * generalized_inverse(phi2, s, cfg)
    bound = generalized_inverse(phi3, s, cfg)
    with np.errstate(divide="ignore", invalid="ignore"):
        margin = np.where(bound > 0, 1.0 - prod / bound, np.where(prod > 0, -np.inf, 0.0))
    worst = int(np.argmin(margin))
    grid = (float(s[1]), float(s[-1]), int(s.size))
    if margin[worst] < -_inverse_tol(cfg):
        return HolderCertificate("fails", float(margin[worst]), float(s[worst]), grid)
    return HolderCertificate("holds", float(margin[worst]), None, grid)


def lebesgue_triple(p1: float, p2: float) -> tuple[Power, Power, Power]:
    """``(t^p1, t^(p1 p2/(p1 - p2)), t^p2)`` for ``1 <= p2 < p1``: the auxiliary Young function sits in the middle."""
    if not (1 <= p2 < p1 < math.inf):
        raise ValueError(f"need 1 <= p2 < p1, got p1={p1}, p2={p2}")
    return Power(p1), Power(p1 * p2 / (p1 - p2)), Power(p2)


# ---------------------------------------------------------------------------
# norm-level checks


@dataclass
class ProductBound:
    holder: HolderCertificate
    norm_fg: float
    norm_f: float
    norm_g: float
    bound: float
    ratio: float
    holds: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "holder": self.holder.to_json(),
            "norm_fg": self.norm_fg,
            "norm_f": self.norm_f,
            "norm_g": self.norm_g,
            "bound": self.bound,
            "ratio": self.ratio,
            "holds": self.holds,
        }


def product_norm_bound(f: SimpleFunction, g: SimpleFunction, phi1: YoungFunction,
                       phi2: YoungFunction, phi3: YoungFunction,
                       cfg: ToleranceConfig = DEFAULT,
                       holder: HolderCertificate | None = None) -> ProductBound:
    """Verify ``||fg||_phi3 <= 2 ||f||_phi1 ||g||_phi2``; ``ratio`` is ``||fg|| / (||f|| ||g||)``.

    Pass a precomputed ``holder`` certificate to skip the grid check when
    looping over many functions with one triple.
    """
    if holder is None:
        holder = holder_triple_check(phi1, phi2, phi3, cfg)
    if not holder.holds:
        raise PreconditionError(f"inverse-product hypothesis fails at s = {holder.witness:g}")
    fg = pointwise_product(f, g)
    n_fg = luxemburg_norm(fg, phi3, cfg).value
    n_f = luxemburg_norm(f, phi1, cfg).value
    n_g = luxemburg_norm(g, phi2, cfg).value
    denom = n_f * n_g
    ratio = n_fg / denom if denom > 0 else 0.0
    bound = 2.0 * denom
    holds = n_fg <= bound * (1 + _inverse_tol(cfg))
    return ProductBound(holder, n_fg, n_f, n_g, bound, ratio, holds)


@dataclass
class BoundedInclusion:
    constant: float
    norm_phi2: float
    norm_phi1: float
    bound: float
    holds: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "constant": self.constant,
            "norm_phi2": self.norm_phi2,
            "norm_phi1": self.norm_phi1,
            "bound": self.bound,
            "holds": self.holds,
        }


def bounded_domain_constant(ball: Ball, phi_aux: YoungFunction, cfg: ToleranceConfig = DEFAULT) -> float:
    """``2 / inv_aux(1 / |ball|)``, i.e. twice the norm of the ball indicator."""
    return 2.0 * char_norm_closed_form(phi_aux, ball.volume, cfg)


def bounded_domain_inclusion(f: SimpleFunction, ball: Ball, phi1: YoungFunction,
                             phi2: YoungFunction, phi_aux: YoungFunction,
                             cfg: ToleranceConfig = DEFAULT,
                             holder: HolderCertificate | None = None) -> BoundedInclusion:
    """Verify ``||f||_phi2 <= 2 / inv_aux(1/|X|) * ||f||_phi1`` for ``f`` supported in the ball ``X``."""
    if f.partition.total_measure > ball.volume * (1 + cfg.rel_tol):
        raise PreconditionError("f's cells do not fit inside the ball")
    if holder is None:
        holder = holder_triple_check(phi1, phi_aux, phi2, cfg)
    if not holder.holds:
        raise PreconditionError(f"inverse-product hypothesis fails at s = {holder.witness:g}")
    K = bounded_domain_constant(ball, phi_aux, cfg)
    n2 = luxemburg_norm(f, phi2, cfg).value
    n1 = luxemburg_norm(f, phi1, cfg).value
    bound = K * n1
    return BoundedInclusion(K, n2, n1, bound, n2 <= bound * (1 + _inverse_tol(cfg)))


@dataclass
class EmpiricalReport:
    C: float
    weak: bool
    samples: SampleSpec
    n_checked: int
    violations: int
    max_violation: float
    max_ratio: float
    worst: dict[str, Any] | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "C": self.C,
            "weak": self.weak,
            "samples": self.samples.to_json(),
            "n_checked": self.n_checked,
            "violations": self.violations,
            "max_violation": self.max_violation,
            "max_ratio": self.max_ratio,
            "worst_sample": self.worst,
        }


def empirical_norm_inequality(phi: YoungFunction, psi: YoungFunction, C: float,
                              samples: SampleSpec, weak: bool = False,
                              cfg: ToleranceConfig = DEFAULT) -> EmpiricalReport:
    """Check ``||f||_phi <= C ||f||_psi`` over a seeded family of simple functions.

    ``max_ratio`` (largest observed ``||f||_phi / ||f||_psi``) is a lower
    bound on the best constant; ``max_violation`` is the largest relative
    excess ``||f||_phi / (C ||f||_psi) - 1`` (negative when all pass).
    """
    norm = weak_norm if weak else luxemburg_norm
    slack = _inverse_tol(cfg)
    violations = 0
    max_ratio = 0.0
    max_violation = -math.inf
    worst = None
    fs = samples.generate()
    for f in fs:
        a = norm(f, phi, cfg).value
        b = norm(f, psi, cfg).value
        ratio = a / b
        excess = ratio / C - 1.0
        max_ratio = max(max_ratio, ratio)
        if excess > max_violation:
            max_violation = excess
            worst = {"f": f.to_json(), "norm_phi": a, "norm_psi": b}
        if excess > slack:
            violations += 1
    return EmpiricalReport(C, weak, samples, len(fs), violations, max_violation, max_ratio, worst)


@dataclass
class BallSweep:
    C: float
    holds: bool
    max_ratio: float
    witness_measure: float | None
    measures: tuple[float, float, int]

    def to_json(self) -> dict[str, Any]:
        return {
            "C": self.C,
            "holds": self.holds,
            "max_ratio": self.max_ratio,
            "witness_measure": self.witness_measure,
            "measures": list(self.measures),
        }


def ball_sweep(phi: YoungFunction, psi: YoungFunction, C: float, cfg: ToleranceConfig = DEFAULT,
               count: int | None = None) -> BallSweep:
    """Compare ``||chi_B||_phi <= C ||chi_B||_psi`` over ball measures ``1/s`` for s in the image grid."""
    s = _image_grid(phi, psi, C, cfg)
    if count is not None and count < s.size:
        s = s[np.linspace(0, s.size - 1, count).astype(int)]
    inv_phi = generalized_inverse(phi, s, cfg)
    inv_psi = generalized_inverse(psi, s, cfg)
    with np.errstate(divide="ignore"):
        ratio = inv_psi / inv_phi  # = ||chi||_phi / ||chi||_psi at measure 1/s
    worst = int(np.argmax(ratio))
    holds = bool(ratio[worst] <= C * (1 + _inverse_tol(cfg)))
    return BallSweep(C, holds, float(ratio[worst]), None if holds else float(1.0 / s[worst]),
                     (float(1 / s[-1]), float(1 / s[0]), int(s.size)))


# ---------------------------------------------------------------------------
# radial-power separation


def radial_weak_finite(f: RadialPowerFunction, phi: YoungFunction) -> bool | None:
    limit, unknown = _radial_weak_limits(f, phi, 1.0)
    if math.isinf(limit):
        return False
    return None if unknown else True


def radial_family(alphas=None, dim: int = 1) -> list[RadialPowerFunction]:
    """Radial powers near the origin, near infinity and global, over a grid of decay rates."""
    if alphas is None:
        alphas = np.arange(1, 321) / 16.0
    out = []
    for a in alphas:
        out.append(RadialPowerFunction(1.0, float(a), dim, 0.0, 1.0))
        out.append(RadialPowerFunction(1.0, float(a), dim, 1.0, math.inf))
        out.append(RadialPowerFunction(1.0, float(a), dim))
    return out


def radial_separation_witness(phi: YoungFunction, psi: YoungFunction, weak: bool = False,
                              family: list[RadialPowerFunction] | None = None) -> RadialPowerFunction | None:
    """A radial power in the psi space but not in the phi space, if the family has one."""
    finite = radial_weak_finite if weak else radial_modular_finite
    for f in family if family is not None else radial_family():
        if finite(f, psi) is True and finite(f, phi) is False:
            return f
    return None


# ---------------------------------------------------------------------------
# verdict


STATEMENTS = {
    "1": "phi(t) <= psi(Ct) for every t > 0",
    "2": "L_psi is contained in L_phi",
    "3": "||f||_phi <= C ||f||_psi for every f",
    "4": "wL_psi is contained in wL_phi",
    "5": "||f||_wphi <= C ||f||_wpsi for every f",
}


@dataclass
class Statement:
    holds: bool | None
    evidence: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {"holds": self.holds, "evidence": self.evidence}


@dataclass
class InclusionVerdict:
    phi: YoungFunction
    psi: YoungFunction
    C: float | None
    statements: dict[str, Statement]
    status: str

    @property
    def consistent(self) -> bool:
        flags = {s.holds for s in self.statements.values() if s.holds is not None}
        return len(flags) <= 1

    def to_json(self) -> dict[str, Any]:
        return {
            "phi": self.phi.to_json(),
            "psi": self.psi.to_json(),
            "C": self.C,
            "status": self.status,
            "consistent": self.consistent,
            "statements": {
                k: {"text": STATEMENTS[k], **v.to_json()} for k, v in self.statements.items()
            },
        }


def _radial_statement(phi, psi, weak: bool, cfg) -> Statement:
    witness = radial_separation_witness(phi, psi, weak)
    if witness is None:
        return Statement(True, {"radial_family_size": len(radial_family()), "witness": None})
    norm = weak_norm if weak else luxemburg_norm
    ev = {
        "witness": witness.to_json(),
        "norm_psi": norm(witness, psi, cfg).to_json(),
        "norm_phi": norm(witness, phi, cfg).to_json(),
    }
    return Statement(False, ev)


def inclusion_verdict(phi: YoungFunction, psi: YoungFunction, cfg: ToleranceConfig = DEFAULT,
                      samples: SampleSpec | None = None, probe_constant: float = 10.0) -> InclusionVerdict:
    """Fill all five equivalent statements, each from its own evidence."""
    if samples is None:
        samples = SampleSpec(n_samples=200, seed=42, include_extremes=True)
    try:
        C = find_min_constant(phi, psi, cfg)
    except InconclusiveError as exc:
        cert = dominates(phi, psi, probe_constant, cfg)
        statements = {"1": Statement(None, {"reason": str(exc), "certificate": cert.to_json()})}
        for key in "2345":
            statements[key] = Statement(None, {"reason": "skipped: domination inconclusive"})
        return InclusionVerdict(phi, psi, None, statements, "inconclusive")

    C_used = C if C is not None else probe_constant
    cert = dominates(phi, psi, C_used, cfg)
    cross = inverse_cross_check(phi, psi, C_used, cfg)
    statements = {
        "1": Statement(C is not None, {
            "min_constant": C,
            "certificate": cert.to_json(),
            "inverse_cross_check": cross.to_json(),
        }),
        "2": _radial_statement(phi, psi, False, cfg),
    }
    strong = empirical_norm_inequality(phi, psi, C_used, samples, False, cfg)
    sweep = ball_sweep(phi, psi, C_used, cfg, count=257)
    statements["3"] = Statement(strong.violations == 0 and sweep.holds,
                                {"samples": strong.to_json(), "ball_sweep": sweep.to_json()})
    statements["4"] = _radial_statement(phi, psi, True, cfg)
    weak = empirical_norm_inequality(phi, psi, C_used, samples, True, cfg)
    statements["5"] = Statement(weak.violations == 0, {"samples": weak.to_json()})

    verdict = InclusionVerdict(phi, psi, C, statements, "")
    if not verdict.consistent:
        verdict.status = "inconsistent"
    else:
        verdict.status = "holds" if C is not None else "fails"
    return verdict
