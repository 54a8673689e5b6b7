"""Numerical tolerances shared by every solver in the package."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from typing import Any

import numpy as np

#: Evaluations of a Young function are clipped to this value.
SATURATION = 1e300


@dataclass(frozen=True)
class ToleranceConfig:
    """Tolerances and grid settings.

    ``grid_range`` and ``grid_points`` define the log-spaced verification grid
    used by domination checks and sampled invariants.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_bisect_iters: int = 200
    grid_points: int = 4096
    grid_range: tuple[float, float] = field(default=(1e-8, 1e8))

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("rel_tol and abs_tol must be positive")
        if self.max_bisect_iters <= 0 or self.grid_points <= 1:
            raise ValueError("max_bisect_iters must be positive and grid_points > 1")
        t_min, t_max = self.grid_range
        if not (0 < t_min < t_max < np.inf):
            raise ValueError(f"grid_range must satisfy 0 < t_min < t_max, got {self.grid_range}")
        object.__setattr__(self, "grid_range", (float(t_min), float(t_max)))

    def grid(self) -> np.ndarray:
        t_min, t_max = self.grid_range
        return np.logspace(np.log10(t_min), np.log10(t_max), self.grid_points)

    def with_(self, **changes: Any) -> "ToleranceConfig":
        return replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["grid_range"] = list(self.grid_range)
        return d

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ToleranceConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown tolerance fields: {sorted(unknown)}")
        kwargs = dict(data)
        if "grid_range" in kwargs:
            kwargs["grid_range"] = tuple(kwargs["grid_range"])
        return cls(**kwargs)


DEFAULT = ToleranceConfig()
