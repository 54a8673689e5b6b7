"""Young functions as immutable expression trees.

A Young function is built from primitives (:class:`Power`,
:class:`ExpMinusOne`, :class:`PowerLog`, :class:`PiecewiseLinearConvex`) and
combinators (:class:`ArgScale`, :class:`ValScale`, :class:`Sum`, :class:`Max`).
Every tree compiles to a flat stack program that the kernels in
:mod:`orlicz._kernels` evaluate, so calling ``phi(t)`` on an array costs one
kernel launch regardless of tree depth.

The generalized inverse follows the left-edge convention
``inv(s) = inf{r >= 0 : phi(r) > s}``. For a Young function that vanishes on
an interval ``[0, a]`` this gives ``inv(0) = a`` rather than ``0``; the
invariant suites only apply ``inv(0) = 0`` to functions that are strictly
positive on ``(0, inf)`` (see :func:`is_positive`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterator, Sequence

import numpy as np

from . import _kernels
from .config import DEFAULT, SATURATION, ToleranceConfig


class SchemaError(ValueError):
    """Malformed JSON input; ``path`` points at the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


class InverseError(ArithmeticError):
    """Bracket expansion for the generalized inverse ran past the overflow guard."""


# ---------------------------------------------------------------------------
# asymptotic growth descriptors


@dataclass(frozen=True)
class Growth:
    """Leading-order behaviour ``coef * exp(rate*t) * t**power * log(t)**log_power``.

    At infinity all four fields are meaningful. At zero only ``coef`` and
    ``power`` are used; ``power = inf`` marks a function that vanishes
    identically near the origin.
    """

    coef: float
    rate: float = 0.0
    power: float = 0.0
    log_power: float = 0.0

    @property
    def order(self) -> tuple[float, float, float]:
        return (self.rate, self.power, self.log_power)

    def arg_scaled(self, k: float) -> "Growth":
        if math.isinf(self.power):
            return self
        return Growth(self.coef * k**self.power, self.rate * k, self.power, self.log_power)

    def val_scaled(self, c: float) -> "Growth":
        return Growth(self.coef * c, self.rate, self.power, self.log_power)


def _close(a: float, b: float, rel: float) -> bool:
    return abs(a - b) <= rel * max(abs(a), abs(b))


def _combine(growths: Sequence[Growth | None], *, at_zero: bool, use_max: bool) -> Growth | None:
    if any(g is None for g in growths):
        return None
    gs = [g for g in growths if g is not None]
    if at_zero:
        live = [g for g in gs if not math.isinf(g.power)]
        if not live:
            return Growth(0.0, power=math.inf)
        lead = min(g.power for g in live)
        tied = [g for g in live if g.power == lead]
    else:
        lead_order = max(g.order for g in gs)
        tied = [g for g in gs if g.order == lead_order]
    coefs = [g.coef for g in tied]
    coef = max(coefs) if use_max else math.fsum(coefs)
    g0 = tied[0]
    return Growth(coef, g0.rate, g0.power, g0.log_power)


def compare_at_infinity(g1: Growth, g2: Growth, rel_tol: float = 1e-12) -> int:
    """Sign of ``g1 - g2`` for large t; 0 when the leading terms coincide."""
    if g1.order != g2.order:
        return 1 if g1.order > g2.order else -1
    if _close(g1.coef, g2.coef, rel_tol):
        return 0
    return 1 if g1.coef > g2.coef else -1


def compare_at_zero(g1: Growth, g2: Growth, rel_tol: float = 1e-12) -> int:
    """Sign of ``g1 - g2`` for small t > 0; 0 when the leading terms coincide."""
    if g1.power != g2.power:
        # higher power means smaller near zero
        return -1 if g1.power > g2.power else 1
    if math.isinf(g1.power) or _close(g1.coef, g2.coef, rel_tol):
        return 0
    return 1 if g1.coef > g2.coef else -1


# ---------------------------------------------------------------------------
# expression tree


class YoungFunction:
    """Base class. Subclasses are frozen dataclasses."""

    kind: str = ""

    # -- evaluation -------------------------------------------------------

    @cached_property
    def program(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        ops: list[tuple[int, int, int]] = []
        fargs: list[tuple[float, float]] = []
        knots: list[tuple[float, float]] = []
        self._emit(ops, fargs, knots)
        return (
            np.asarray(ops, dtype=np.int64).reshape(-1, 3),
            np.asarray(fargs, dtype=np.float64).reshape(-1, 2),
            np.asarray(knots if knots else [(0.0, 0.0)], dtype=np.float64).reshape(-1, 2),
        )

    def _emit(self, ops, fargs, knots) -> None:
        raise NotImplementedError

    def __call__(self, t):
        """Vectorized evaluation; values are clipped at :data:`SATURATION`."""
        arr = np.asarray(t, dtype=np.float64)
        out = _kernels.eval_program(*self.program, np.ascontiguousarray(arr.reshape(-1)))
        if arr.ndim == 0:
            return float(out[0])
        return out.reshape(arr.shape)

    # -- structure --------------------------------------------------------

    def children(self) -> tuple["YoungFunction", ...]:
        return ()

    def walk(self) -> Iterator["YoungFunction"]:
        yield self
        for child in self.children():
            yield from child.walk()

    def growth_at_infinity(self) -> Growth | None:
        raise NotImplementedError

    def growth_at_zero(self) -> Growth | None:
        raise NotImplementedError

    def to_json(self) -> dict[str, Any]:
        raise NotImplementedError

    def __str__(self) -> str:
        return describe(self)


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not (value > 0 and math.isfinite(value)):
        raise ValueError(f"{name} must be positive and finite, got {value}")
    return value


@dataclass(frozen=True, eq=True)
class Power(YoungFunction):
    """``t**p``. Young for p >= 1; smaller exponents are accepted so validation can reject them."""

    p: float
    kind = "power"

    def __post_init__(self):
        object.__setattr__(self, "p", _positive("p", self.p))

    def _emit(self, ops, fargs, knots):
        ops.append((_kernels.OP_POWER, 0, 0))
        fargs.append((self.p, 0.0))

    def growth_at_infinity(self):
        return Growth(1.0, 0.0, self.p, 0.0)

    def growth_at_zero(self):
        return Growth(1.0, power=self.p)

    def to_json(self):
        return {"kind": "power", "p": self.p}


@dataclass(frozen=True, eq=True)
class ExpMinusOne(YoungFunction):
    """``exp(t) - 1``."""

    kind = "exp_minus_one"

    def _emit(self, ops, fargs, knots):
        ops.append((_kernels.OP_EXPM1, 0, 0))
        fargs.append((0.0, 0.0))

    def growth_at_infinity(self):
        return Growth(1.0, 1.0, 0.0, 0.0)

    def growth_at_zero(self):
        return Growth(1.0, power=1.0)

    def to_json(self):
        return {"kind": "exp_minus_one"}


@dataclass(frozen=True, eq=True)
class PowerLog(YoungFunction):
    """``t**p * log(1 + t)**q``."""

    p: float
    q: float = 0.0
    kind = "power_log"

    def __post_init__(self):
        object.__setattr__(self, "p", _positive("p", self.p))
        q = float(self.q)
        if not (q >= 0 and math.isfinite(q)):
            raise ValueError(f"q must be nonnegative and finite, got {q}")
        object.__setattr__(self, "q", q)

    def _emit(self, ops, fargs, knots):
        ops.append((_kernels.OP_POWER_LOG, 0, 0))
        fargs.append((self.p, self.q))

    def growth_at_infinity(self):
        return Growth(1.0, 0.0, self.p, self.q)

    def growth_at_zero(self):
        # log(1 + t) ~ t near the origin
        return Growth(1.0, power=self.p + self.q)

    def to_json(self):
        return {"kind": "power_log", "p": self.p, "q": self.q}


@dataclass(frozen=True, eq=True)
class PiecewiseLinearConvex(YoungFunction):
    """Linear interpolation through ``points``; the last segment extends to infinity.

    ``points`` must start at ``(0, 0)`` with strictly increasing abscissae.
    Slopes are *not* checked here: a non-convex table is representable so
    that :func:`validate_young` can report it.
    """

    points: tuple[tuple[float, float], ...]
    kind = "pwl"

    def __post_init__(self):
        pts = tuple((float(t), float(y)) for t, y in self.points)
        if len(pts) < 2:
            raise ValueError("need at least two breakpoints")
        if pts[0] != (0.0, 0.0):
            raise ValueError("first breakpoint must be (0, 0)")
        ts = [t for t, _ in pts]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("breakpoint abscissae must be strictly increasing")
        if not all(math.isfinite(t) and math.isfinite(y) and y >= 0 for t, y in pts):
            raise ValueError("breakpoints must be finite with nonnegative values")
        object.__setattr__(self, "points", pts)

    @property
    def slopes(self) -> np.ndarray:
        pts = np.asarray(self.points)
        return np.diff(pts[:, 1]) / np.diff(pts[:, 0])

    def _emit(self, ops, fargs, knots):
        ops.append((_kernels.OP_PWL, len(knots), len(self.points)))
        fargs.append((0.0, 0.0))
        knots.extend(self.points)

    def growth_at_infinity(self):
        last = float(self.slopes[-1])
        if last <= 0:
            return None
        return Growth(last, 0.0, 1.0, 0.0)

    def growth_at_zero(self):
        first = float(self.slopes[0])
        if first < 0:
            return None
        if first == 0:
            return Growth(0.0, power=math.inf)
        return Growth(first, power=1.0)

    def to_json(self):
        return {"kind": "pwl", "points": [list(p) for p in self.points]}


@dataclass(frozen=True, eq=True)
class ArgScale(YoungFunction):
    """``t -> inner(k t)``."""

    k: float
    inner: YoungFunction
    kind = "arg_scale"

    def __post_init__(self):
        object.__setattr__(self, "k", _positive("k", self.k))

    def children(self):
        return (self.inner,)

    def _emit(self, ops, fargs, knots):
        ops.append((_kernels.OP_ARG_PUSH, 0, 0))
        fargs.append((self.k, 0.0))
        self.inner._emit(ops, fargs, knots)
        ops.append((_kernels.OP_ARG_POP, 0, 0))
        fargs.append((0.0, 0.0))

    def growth_at_infinity(self):
        g = self.inner.growth_at_infinity()
        return None if g is None else g.arg_scaled(self.k)

    def growth_at_zero(self):
        g = self.inner.growth_at_zero()
        return None if g is None else g.arg_scaled(self.k)

    def to_json(self):
        return {"kind": "arg_scale", "k": self.k, "inner": self.inner.to_json()}


@dataclass(frozen=True, eq=True)
class ValScale(YoungFunction):
    """``t -> c * inner(t)``."""

    c: float
    inner: YoungFunction
    kind = "val_scale"

    def __post_init__(self):
        object.__setattr__(self, "c", _positive("c", self.c))

    def children(self):
        return (self.inner,)

    def _emit(self, ops, fargs, knots):
        self.inner._emit(ops, fargs, knots)
        ops.append((_kernels.OP_VAL_SCALE, 0, 0))
        fargs.append((self.c, 0.0))

    def growth_at_infinity(self):
        g = self.inner.growth_at_infinity()
        return None if g is None else g.val_scaled(self.c)

    def growth_at_zero(self):
        g = self.inner.growth_at_zero()
        return None if g is None else g.val_scaled(self.c)

    def to_json(self):
        return {"kind": "val_scale", "c": self.c, "inner": self.inner.to_json()}


@dataclass(frozen=True, eq=True)
class _Combination(YoungFunction):
    terms: tuple[YoungFunction, ...] = field(default=())
    _opcode = -1
    _use_max = False

    def __post_init__(self):
        terms = tuple(self.terms)
        if not terms:
            raise ValueError(f"{self.kind} needs at least one term")
        if not all(isinstance(t, YoungFunction) for t in terms):
            raise TypeError("terms must be YoungFunction instances")
        object.__setattr__(self, "terms", terms)

    def children(self):
        return self.terms

    def _emit(self, ops, fargs, knots):
        for term in self.terms:
            term._emit(ops, fargs, knots)
        if len(self.terms) > 1:
            ops.append((self._opcode, len(self.terms), 0))
            fargs.append((0.0, 0.0))

    def growth_at_infinity(self):
        return _combine([t.growth_at_infinity() for t in self.terms], at_zero=False, use_max=self._use_max)

    def growth_at_zero(self):
        return _combine([t.growth_at_zero() for t in self.terms], at_zero=True, use_max=self._use_max)

    def to_json(self):
        return {"kind": self.kind, "terms": [t.to_json() for t in self.terms]}


@dataclass(frozen=True, eq=True)
class Sum(_Combination):
    kind = "sum"
    _opcode = _kernels.OP_SUM


@dataclass(frozen=True, eq=True)
class Max(_Combination):
    kind = "max"
    _opcode = _kernels.OP_MAX
    _use_max = True


def describe(phi: YoungFunction) -> str:
    """Compact human-readable form, e.g. ``val_scale(0.25, power(2))``."""
    if isinstance(phi, Power):
        return f"power({phi.p:g})"
    if isinstance(phi, ExpMinusOne):
        return "exp_minus_one"
    if isinstance(phi, PowerLog):
        return f"power_log({phi.p:g},{phi.q:g})"
    if isinstance(phi, PiecewiseLinearConvex):
        return "pwl(" + ";".join(f"{t:g},{y:g}" for t, y in phi.points) + ")"
    if isinstance(phi, ArgScale):
        return f"arg_scale({phi.k:g}, {describe(phi.inner)})"
    if isinstance(phi, ValScale):
        return f"val_scale({phi.c:g}, {describe(phi.inner)})"
    if isinstance(phi, _Combination):
        return f"{phi.kind}(" + ", ".join(describe(t) for t in phi.terms) + ")"
    return repr(phi)


def as_power_law(phi: YoungFunction) -> tuple[float, float] | None:
    """Return ``(a, p)`` when ``phi(t) == a * t**p`` identically, else None."""
    if isinstance(phi, Power):
        return 1.0, phi.p
    if isinstance(phi, PowerLog) and phi.q == 0:
        return 1.0, phi.p
    if isinstance(phi, (ArgScale, ValScale)):
        inner = as_power_law(phi.inner)
        if inner is None:
            return None
        a, p = inner
        return (a * phi.k**p, p) if isinstance(phi, ArgScale) else (a * phi.c, p)
    if isinstance(phi, _Combination):
        parts = [as_power_law(t) for t in phi.terms]
        if any(x is None for x in parts) or len({p for _, p in parts}) != 1:
            return None
        coefs = [a for a, _ in parts]
        return (max(coefs) if isinstance(phi, Max) else math.fsum(coefs)), parts[0][1]
    return None


# ---------------------------------------------------------------------------
# public operations


def _check_arg(name: str, x: Any) -> float:
    if isinstance(x, bool):
        raise TypeError(f"{name} must be a real number")
    x = float(x)
    if not math.isfinite(x) or x < 0:
        raise ValueError(f"{name} must be finite and nonnegative, got {x}")
    return x


def evaluate(phi: YoungFunction, t: float) -> float:
    """Return ``phi(t)`` for a single finite ``t >= 0``."""
    return phi(_check_arg("t", t))


def is_saturated(value) -> np.ndarray | bool:
    return np.asarray(value) >= SATURATION


def generalized_inverse(phi: YoungFunction, s, cfg: ToleranceConfig = DEFAULT):
    """``inf{r >= 0 : phi(r) > s}`` by doubling/halving bracket then bisection.

    Accepts a scalar or an array of ``s`` values. Raises :class:`InverseError`
    if ``phi`` stays at or below ``s`` up to the overflow guard.
    """
    arr = np.asarray(s, dtype=np.float64)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise ValueError("s must be finite and nonnegative")
    flat = np.ascontiguousarray(arr.reshape(-1))
    out = _kernels.inverse_program(*phi.program, flat, cfg.rel_tol, cfg.max_bisect_iters)
    # At s = 0 bisection would stop at the float underflow edge of phi.
    zero = flat == 0.0
    if np.any(zero) and is_positive(phi, cfg):
        out[zero] = 0.0
    if np.any(np.isnan(out)):
        bad = flat[np.isnan(out)][0]
        raise InverseError(f"{describe(phi)} does not exceed s={bad:g} below the overflow guard")
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def inverse_product(phi1: YoungFunction, phi2: YoungFunction, t, cfg: ToleranceConfig = DEFAULT):
    return generalized_inverse(phi1, t, cfg) * generalized_inverse(phi2, t, cfg)


def is_positive(phi: YoungFunction, cfg: ToleranceConfig = DEFAULT) -> bool:
    """True when ``phi > 0`` on ``(0, inf)``, i.e. ``inv(0) == 0``."""
    g = phi.growth_at_zero()
    if g is not None:
        return not math.isinf(g.power) and g.coef > 0
    return bool(phi(cfg.grid_range[0]) > 0)


# ---------------------------------------------------------------------------
# validation


@dataclass
class Check:
    passed: bool
    detail: str = ""
    witness: dict[str, float] | None = None

    def to_json(self) -> dict[str, Any]:
        return {"passed": self.passed, "detail": self.detail, "witness": self.witness}


@dataclass
class ValidationReport:
    phi: YoungFunction
    checks: dict[str, Check]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failures(self) -> list[str]:
        return [name for name, c in self.checks.items() if not c.passed]

    def to_json(self) -> dict[str, Any]:
        return {
            "phi": self.phi.to_json(),
            "ok": self.ok,
            "checks": {k: v.to_json() for k, v in self.checks.items()},
        }


def _sample_points(cfg: ToleranceConfig) -> np.ndarray:
    return np.unique(np.concatenate([cfg.grid(), np.linspace(0.0, 16.0, 257)]))


def validate_young(phi: YoungFunction, cfg: ToleranceConfig = DEFAULT) -> ValidationReport:
    """Sampled check of the Young-function axioms; failures are report entries."""
    checks: dict[str, Check] = {}
    t = _sample_points(cfg)
    v = phi(t)

    at0 = phi(0.0)
    checks["zero_at_origin"] = Check(at0 == 0.0, f"phi(0) = {at0!r}", None if at0 == 0 else {"t": 0.0, "value": at0})

    tol = lambda x: cfg.abs_tol + cfg.rel_tol * np.abs(x)  # noqa: E731
    drops = np.flatnonzero(v[1:] < v[:-1] - tol(v[:-1]))
    if drops.size:
        i = int(drops[0])
        checks["nondecreasing"] = Check(
            False, "phi decreases between sampled points",
            {"t1": float(t[i]), "t2": float(t[i + 1]), "phi_t1": float(v[i]), "phi_t2": float(v[i + 1])},
        )
    else:
        checks["nondecreasing"] = Check(True, f"{t.size} sampled points")

    checks["midpoint_convex"] = _check_convexity(phi, t, tol)
    checks["unbounded"] = _check_unbounded(phi, cfg)
    return ValidationReport(phi, checks)


def _check_convexity(phi: YoungFunction, t: np.ndarray, tol) -> Check:
    for node in phi.walk():
        if isinstance(node, PiecewiseLinearConvex):
            slopes = node.slopes
            bad = np.flatnonzero(np.diff(slopes) < 0)
            if bad.size:
                i = int(bad[0]) + 1
                return Check(
                    False, "piecewise-linear slopes decrease at a breakpoint",
                    {"t": node.points[i][0], "slope_before": float(slopes[i - 1]), "slope_after": float(slopes[i])},
                )
    n_pairs = 0
    for gap in (1, 2, 7, 64, 512):
        if gap >= t.size:
            continue
        a, b = t[:-gap], t[gap:]
        fa, fb, fm = phi(a), phi(b), phi(0.5 * (a + b))
        usable = ~(is_saturated(fa) | is_saturated(fb))
        avg = 0.5 * (fa + fb)
        bad = np.flatnonzero(usable & (fm > avg + tol(avg)))
        n_pairs += int(usable.sum())
        if bad.size:
            i = int(bad[0])
            return Check(
                False, "midpoint value exceeds chord",
                {"s": float(a[i]), "t": float(b[i]), "phi_mid": float(fm[i]), "chord_mid": float(avg[i])},
            )
    return Check(True, f"{n_pairs} sampled pairs")


def _check_unbounded(phi: YoungFunction, cfg: ToleranceConfig) -> Check:
    threshold = 1.0 / cfg.abs_tol
    probe = cfg.grid_range[1]
    while probe <= _kernels.BRACKET_HIGH:
        value = phi(probe)
        if value > threshold:
            return Check(True, f"phi({probe:g}) = {value:g} > {threshold:g}")
        probe *= 16.0
    return Check(False, f"phi stays below {threshold:g} up to t = {probe / 16:g}", {"t": probe / 16, "value": float(phi(probe / 16))})


# ---------------------------------------------------------------------------
# JSON


def _num(obj: dict, key: str, path: str, *, positive: bool = False, nonneg: bool = False) -> float:
    if key not in obj:
        raise SchemaError(f"{path}.{key}", "missing required field")
    x = obj[key]
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise SchemaError(f"{path}.{key}", f"expected a number, got {type(x).__name__}")
    x = float(x)
    if not math.isfinite(x):
        raise SchemaError(f"{path}.{key}", "must be finite")
    if positive and x <= 0:
        raise SchemaError(f"{path}.{key}", "must be positive")
    if nonneg and x < 0:
        raise SchemaError(f"{path}.{key}", "must be nonnegative")
    return x


def _expect_keys(obj: dict, allowed: set[str], path: str) -> None:
    extra = set(obj) - allowed - {"kind"}
    if extra:
        raise SchemaError(f"{path}.{sorted(extra)[0]}", "unexpected field")


def young_from_json(obj: Any, path: str = "phi") -> YoungFunction:
    """Parse the JSON expression-tree schema, raising :class:`SchemaError`."""
    if not isinstance(obj, dict):
        raise SchemaError(path, f"expected an object, got {type(obj).__name__}")
    kind = obj.get("kind")
    if kind == "power":
        _expect_keys(obj, {"p"}, path)
        return Power(_num(obj, "p", path, positive=True))
    if kind == "exp_minus_one":
        _expect_keys(obj, set(), path)
        return ExpMinusOne()
    if kind == "power_log":
        _expect_keys(obj, {"p", "q"}, path)
        q = _num(obj, "q", path, nonneg=True) if "q" in obj else 0.0
        return PowerLog(_num(obj, "p", path, positive=True), q)
    if kind == "pwl":
        _expect_keys(obj, {"points"}, path)
        pts = obj.get("points")
        if not isinstance(pts, list):
            raise SchemaError(f"{path}.points", "expected a list of [t, y] pairs")
        parsed = []
        for i, pt in enumerate(pts):
            if (not isinstance(pt, list) or len(pt) != 2
                    or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in pt)):
                raise SchemaError(f"{path}.points[{i}]", "expected [t, y] numbers")
            parsed.append((float(pt[0]), float(pt[1])))
        try:
            return PiecewiseLinearConvex(tuple(parsed))
        except ValueError as exc:
            raise SchemaError(f"{path}.points", str(exc)) from None
    if kind in ("arg_scale", "val_scale"):
        key = "k" if kind == "arg_scale" else "c"
        _expect_keys(obj, {key, "inner"}, path)
        factor = _num(obj, key, path, positive=True)
        if "inner" not in obj:
            raise SchemaError(f"{path}.inner", "missing required field")
        inner = young_from_json(obj["inner"], f"{path}.inner")
        return ArgScale(factor, inner) if kind == "arg_scale" else ValScale(factor, inner)
    if kind in ("sum", "max"):
        _expect_keys(obj, {"terms"}, path)
        terms = obj.get("terms")
        if not isinstance(terms, list) or not terms:
            raise SchemaError(f"{path}.terms", "expected a non-empty list")
        parsed = tuple(young_from_json(t, f"{path}.terms[{i}]") for i, t in enumerate(terms))
        return Sum(parsed) if kind == "sum" else Max(parsed)
    raise SchemaError(f"{path}.kind", f"unknown Young function kind {kind!r}")


def parse_shorthand(text: str) -> dict[str, Any]:
    """Expand ``power:2``, ``exp``, ``power_log:1:1`` or ``pwl:0,0;1,0;3,4`` to JSON."""
    head, _, rest = text.strip().partition(":")
    try:
        if head == "power":
            return {"kind": "power", "p": float(rest)}
        if head in ("exp", "exp_minus_one") and not rest:
            return {"kind": "exp_minus_one"}
        if head == "power_log":
            p, _, q = rest.partition(":")
            return {"kind": "power_log", "p": float(p), "q": float(q) if q else 0.0}
        if head == "pwl":
            pts = [[float(x) for x in pair.split(",")] for pair in rest.split(";")]
            return {"kind": "pwl", "points": pts}
    except ValueError:
        pass
    raise SchemaError("phi", f"cannot parse shorthand {text!r}")
