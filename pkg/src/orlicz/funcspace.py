"""Concrete functions on R^n described by their distribution data.

Both norms in this package are rearrangement invariant, so a function is only
ever needed through ``d_f(lam) = |{x : |f(x)| > lam}|``. Two families are
supported exactly:

* :class:`SimpleFunction` -- a nonnegative step function on abstract disjoint
  cells of known Lebesgue measure;
* :class:`RadialPowerFunction` -- ``c |x|**(-alpha)`` on all of R^n or on an
  annulus ``r_in < |x| < r_out`` (``r_out`` may be infinite).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Union

import numpy as np

from . import _kernels
from .young import SchemaError, _num


def unit_ball_volume(n: int) -> float:
    """``pi**(n/2) / Gamma(n/2 + 1)``.

    Uses the recurrence ``v_n = 2 pi / n * v_(n-2)`` from ``v_0 = 1, v_1 = 2``
    so that low dimensions come out exact (2, pi, 4 pi / 3, ...).
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if n > 200:
        return math.exp(n / 2 * math.log(math.pi) - math.lgamma(n / 2 + 1))
    v = 2.0 if n % 2 else 1.0
    for k in range(2 + n % 2, n + 1, 2):
        v *= 2.0 * math.pi / k
    return v


@dataclass(frozen=True)
class Ball:
    radius: float
    dim: int = 1
    center: tuple[float, ...] | None = None

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"radius must be positive, got {self.radius}")
        if self.center is not None:
            center = tuple(float(x) for x in self.center)
            if len(center) != self.dim:
                raise ValueError("center length must equal dim")
            object.__setattr__(self, "center", center)
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim}")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def volume(self) -> float:
        return unit_ball_volume(self.dim) * self.radius**self.dim

    def to_json(self) -> dict[str, Any]:
        center = list(self.center) if self.center is not None else [0.0] * self.dim
        return {"kind": "ball", "center": center, "radius": self.radius}


def ball_volume(b: Ball) -> float:
    return b.volume


def ball_radius_for_volume(volume: float, dim: int) -> float:
    return (volume / unit_ball_volume(dim)) ** (1.0 / dim)


# ---------------------------------------------------------------------------
# simple functions


@dataclass(frozen=True)
class Partition:
    """Disjoint abstract cells known only through ``(id, measure)``."""

    ids: tuple[str, ...]
    measures: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.measures, dtype=np.float64).reshape(-1)
        if len(self.ids) != m.size:
            raise ValueError("ids and measures differ in length")
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("cell ids must be unique")
        if not np.all(np.isfinite(m) & (m > 0)):
            raise ValueError("cell measures must be finite and positive")
        m.setflags(write=False)
        object.__setattr__(self, "ids", tuple(str(i) for i in self.ids))
        object.__setattr__(self, "measures", m)

    @classmethod
    def of(cls, measures, ids=None) -> "Partition":
        measures = list(measures)
        if ids is None:
            ids = [f"c{i}" for i in range(len(measures))]
        return cls(tuple(ids), np.asarray(measures, dtype=np.float64))

    def __len__(self) -> int:
        return len(self.ids)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.ids == other.ids and np.array_equal(self.measures, other.measures)

    def __hash__(self):
        return hash((self.ids, self.measures.tobytes()))

    @property
    def total_measure(self) -> float:
        return math.fsum(self.measures)


@dataclass(frozen=True, eq=False)
class SimpleFunction:
    partition: Partition
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64).reshape(-1)
        if v.size != len(self.partition):
            raise ValueError("one value per cell is required")
        if not np.all(np.isfinite(v) & (v >= 0)):
            raise ValueError("values must be finite and nonnegative")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_cells(cls, measures, values, ids=None) -> "SimpleFunction":
        return cls(Partition.of(measures, ids), np.asarray(values, dtype=np.float64))

    @classmethod
    def zero(cls, measure: float = 1.0) -> "SimpleFunction":
        return cls.from_cells([measure], [0.0])

    def __eq__(self, other):
        if not isinstance(other, SimpleFunction):
            return NotImplemented
        return self.partition == other.partition and np.array_equal(self.values, other.values)

    __hash__ = None

    @property
    def measures(self) -> np.ndarray:
        return self.partition.measures

    @property
    def is_zero(self) -> bool:
        return not np.any(self.values > 0)

    @property
    def support_measure(self) -> float:
        return math.fsum(self.measures[self.values > 0])

    @property
    def inf_level(self) -> float:
        pos = self.values[self.values > 0]
        return float(pos.min()) if pos.size else 0.0

    @property
    def sup_level(self) -> float:
        return float(self.values.max()) if self.values.size else 0.0

    def distribution(self, lam):
        lam_arr = np.asarray(lam, dtype=np.float64)
        if np.any(lam_arr < 0):
            raise ValueError("lambda must be nonnegative")
        out = _kernels.step_distribution(self.values, self.measures, np.ascontiguousarray(lam_arr.reshape(-1)))
        return float(out[0]) if lam_arr.ndim == 0 else out.reshape(lam_arr.shape)

    def level_tails(self) -> tuple[np.ndarray, np.ndarray]:
        """Distinct positive levels ``c_1 < ... < c_m`` and ``|{f >= c_k}|``."""
        pos = self.values > 0
        levels, inverse = np.unique(self.values[pos], return_inverse=True)
        per_level = np.bincount(inverse, weights=self.measures[pos], minlength=levels.size)
        tails = np.cumsum(per_level[::-1])[::-1]
        return levels, np.ascontiguousarray(tails)

    def breakpoints(self) -> np.ndarray:
        """Levels at which the distribution function jumps."""
        return np.unique(self.values[self.values > 0])

    def scaled(self, k: float) -> "SimpleFunction":
        return SimpleFunction(self.partition, self.values * k)

    def to_json(self) -> dict[str, Any]:
        cells = [
            {"id": i, "measure": float(m), "value": float(v)}
            for i, m, v in zip(self.partition.ids, self.measures, self.values)
        ]
        return {"kind": "simple", "cells": cells}


# ---------------------------------------------------------------------------
# radial powers


@dataclass(frozen=True)
class RadialPowerFunction:
    """``c |x|**(-alpha)`` on ``r_in < |x| < r_out`` in R^dim, zero elsewhere.

    ``r_in = 0`` and ``r_out = inf`` (the defaults) give the global function.
    """

    c: float
    alpha: float
    dim: int = 1
    r_in: float = 0.0
    r_out: float = math.inf

    def __post_init__(self):
        for name in ("c", "alpha"):
            v = float(getattr(self, name))
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be positive and finite")
            object.__setattr__(self, name, v)
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError("dim must be a positive integer")
        object.__setattr__(self, "dim", int(self.dim))
        r_in, r_out = float(self.r_in), float(self.r_out)
        if not (0 <= r_in < r_out) or math.isinf(r_in):
            raise ValueError(f"need 0 <= r_in < r_out, got ({r_in}, {r_out})")
        object.__setattr__(self, "r_in", r_in)
        object.__setattr__(self, "r_out", r_out)

    @property
    def is_global(self) -> bool:
        return self.r_in == 0 and math.isinf(self.r_out)

    @property
    def exponent(self) -> float:
        """``dim / alpha``: ``d_f(lam)`` decays like ``lam**(-exponent)``."""
        return self.dim / self.alpha

    @property
    def is_zero(self) -> bool:
        return False

    @property
    def sup_level(self) -> float:
        return math.inf if self.r_in == 0 else self.c * self.r_in ** (-self.alpha)

    @property
    def inf_level(self) -> float:
        return 0.0 if math.isinf(self.r_out) else self.c * self.r_out ** (-self.alpha)

    @property
    def support_measure(self) -> float:
        v = unit_ball_volume(self.dim)
        return v * (self.r_out**self.dim - self.r_in**self.dim)

    def distribution(self, lam):
        lam_arr = np.asarray(lam, dtype=np.float64)
        if np.any(lam_arr < 0):
            raise ValueError("lambda must be nonnegative")
        v = unit_ball_volume(self.dim)
        with np.errstate(divide="ignore", over="ignore"):
            if self.is_global:
                out = v * (self.c / lam_arr) ** self.exponent
            else:
                radius = np.clip((self.c / lam_arr) ** (1.0 / self.alpha), self.r_in, self.r_out)
                out = v * (radius**self.dim - self.r_in**self.dim)
        return float(out) if lam_arr.ndim == 0 else out

    def breakpoints(self) -> np.ndarray:
        pts = [x for x in (self.inf_level, self.sup_level) if 0 < x < math.inf]
        return np.asarray(pts, dtype=np.float64)

    def scaled(self, k: float) -> "RadialPowerFunction":
        return RadialPowerFunction(self.c * k, self.alpha, self.dim, self.r_in, self.r_out)

    def to_json(self) -> dict[str, Any]:
        if self.is_global:
            support: Any = "global"
        else:
            support = {"annulus": [self.r_in, None if math.isinf(self.r_out) else self.r_out]}
        return {"kind": "radial_power", "c": self.c, "alpha": self.alpha, "dim": self.dim, "support": support}


Function = Union[SimpleFunction, RadialPowerFunction]


# ---------------------------------------------------------------------------
# operations


def char_function(b: Ball) -> SimpleFunction:
    return SimpleFunction.from_cells([b.volume], [1.0], ids=["ball"])


def distribution(f: Function, lam):
    return f.distribution(lam)


def pointwise_product(f: SimpleFunction, g: SimpleFunction) -> SimpleFunction:
    if f.partition != g.partition:
        raise ValueError("pointwise_product needs both functions on the same partition")
    return SimpleFunction(f.partition, f.values * g.values)


def scale(f: Function, k: float) -> Function:
    if not (k > 0 and math.isfinite(k)):
        raise ValueError(f"scale factor must be positive, got {k}")
    return f.scaled(k)


# ---------------------------------------------------------------------------
# seeded sample families


@dataclass(frozen=True)
class SampleSpec:
    """Seeded family of random simple functions.

    Cell counts are uniform in ``[min_cells, max_cells]``; measures and values
    are log-uniform over their ranges. ``include_extremes`` prepends the four
    single-cell indicators at the corners of the measure/value box.
    """

    n_samples: int = 200
    seed: int = 42
    min_cells: int = 1
    max_cells: int = 16
    measure_range: tuple[float, float] = (1e-4, 1e4)
    value_range: tuple[float, float] = (1e-4, 1e4)
    include_extremes: bool = False

    def generate(self) -> list[SimpleFunction]:
        rng = np.random.default_rng(self.seed)
        out: list[SimpleFunction] = []
        if self.include_extremes:
            for m in self.measure_range:
                for v in self.value_range:
                    out.append(SimpleFunction.from_cells([m], [v]))
        while len(out) < self.n_samples:
            out.append(random_simple_function(rng, self.min_cells, self.max_cells,
                                              self.measure_range, self.value_range))
        return out[: self.n_samples]

    def to_json(self) -> dict[str, Any]:
        return {
            "n_samples": self.n_samples,
            "seed": self.seed,
            "min_cells": self.min_cells,
            "max_cells": self.max_cells,
            "measure_range": list(self.measure_range),
            "value_range": list(self.value_range),
            "include_extremes": self.include_extremes,
        }


def _log_uniform(rng: np.random.Generator, lo: float, hi: float, size: int) -> np.ndarray:
    return np.exp(rng.uniform(math.log(lo), math.log(hi), size))


def random_simple_function(rng, min_cells=1, max_cells=16, measure_range=(1e-4, 1e4),
                           value_range=(1e-4, 1e4)) -> SimpleFunction:
    n = int(rng.integers(min_cells, max_cells + 1))
    return SimpleFunction.from_cells(_log_uniform(rng, *measure_range, n), _log_uniform(rng, *value_range, n))


def random_pair_same_partition(rng, **kwargs) -> tuple[SimpleFunction, SimpleFunction]:
    f = random_simple_function(rng, **kwargs)
    vr = kwargs.get("value_range", (1e-4, 1e4))
    g = SimpleFunction(f.partition, _log_uniform(rng, *vr, len(f.partition)))
    return f, g


def random_supported_in(rng, ball: Ball, max_cells: int = 16, value_range=(1e-4, 1e4)) -> SimpleFunction:
    """Random simple function whose cells fit inside ``ball`` (total measure <= |ball|)."""
    n = int(rng.integers(1, max_cells + 1))
    weights = rng.dirichlet(np.ones(n))
    fill = rng.uniform(0.05, 1.0)
    measures = np.maximum(weights, 1e-12)
    measures *= fill * ball.volume / measures.sum()
    return SimpleFunction.from_cells(measures, _log_uniform(rng, *value_range, n))


# ---------------------------------------------------------------------------
# JSON


def _parse_cells(cells: Any, path: str) -> SimpleFunction:
    if not isinstance(cells, list) or not cells:
        raise SchemaError(path, "expected a non-empty list of cells")
    ids, measures, values = [], [], []
    for i, cell in enumerate(cells):
        p = f"{path}[{i}]"
        if not isinstance(cell, dict):
            raise SchemaError(p, "expected an object")
        extra = set(cell) - {"id", "measure", "value"}
        if extra:
            raise SchemaError(f"{p}.{sorted(extra)[0]}", "unexpected field")
        measures.append(_num(cell, "measure", p, positive=True))
        values.append(_num(cell, "value", p, nonneg=True))
        ids.append(str(cell.get("id", f"c{i}")))
    if len(set(ids)) != len(ids):
        raise SchemaError(path, "cell ids must be unique")
    return SimpleFunction.from_cells(measures, values, ids)


def ball_from_json(obj: Any, path: str = "ball") -> Ball:
    if not isinstance(obj, dict) or obj.get("kind", "ball") != "ball":
        raise SchemaError(path, "expected a ball object")
    radius = _num(obj, "radius", path, positive=True)
    center = obj.get("center")
    if center is not None:
        if not isinstance(center, list) or not center or any(
                isinstance(x, bool) or not isinstance(x, (int, float)) for x in center):
            raise SchemaError(f"{path}.center", "expected a non-empty list of numbers")
        dim = len(center)
        if "dim" in obj and obj["dim"] != dim:
            raise SchemaError(f"{path}.dim", "does not match center length")
        return Ball(radius, dim, tuple(center))
    dim = obj.get("dim", 1)
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise SchemaError(f"{path}.dim", "expected a positive integer")
    return Ball(radius, dim)


def function_from_json(obj: Any, path: str = "f") -> Function:
    """Parse ``simple``, ``radial_power`` or ``ball`` (its indicator)."""
    if not isinstance(obj, dict):
        raise SchemaError(path, f"expected an object, got {type(obj).__name__}")
    kind = obj.get("kind")
    if kind == "simple":
        extra = set(obj) - {"kind", "cells"}
        if extra:
            raise SchemaError(f"{path}.{sorted(extra)[0]}", "unexpected field")
        return _parse_cells(obj.get("cells"), f"{path}.cells")
    if kind == "ball":
        return char_function(ball_from_json(obj, path))
    if kind == "radial_power":
        c = _num(obj, "c", path, positive=True)
        alpha = _num(obj, "alpha", path, positive=True)
        dim = obj.get("dim", 1)
        if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
            raise SchemaError(f"{path}.dim", "expected a positive integer")
        support = obj.get("support", "global")
        if support == "global":
            return RadialPowerFunction(c, alpha, dim)
        ann = support.get("annulus") if isinstance(support, dict) else None
        if not isinstance(ann, list) or len(ann) != 2:
            raise SchemaError(f"{path}.support", 'expected "global" or {"annulus": [r_in, r_out]}')
        r_in, r_out = ann
        r_out = math.inf if r_out is None else r_out
        try:
            return RadialPowerFunction(c, alpha, dim, float(r_in), float(r_out))
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"{path}.support.annulus", str(exc)) from None
    raise SchemaError(f"{path}.kind", f"unknown function kind {kind!r}")
