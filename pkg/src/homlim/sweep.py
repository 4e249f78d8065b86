"""Cartesian parameter sweeps over computer parameters and problem sizes."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .costs import AlgorithmCost
from .model import (ComputerSpec, EvaluationError, OptimizationError,
                    classify_regime, optimal_volume, time_breakdown)

AXIS_PARAMETERS = ("pi", "beta", "s", "c", "V", "n", "v")
DEFAULT_POINT_CAP = 1_000_000

# Default axis ranges: 20 log-spaced points per parameter.
DEFAULT_RANGES: dict[str, tuple[float, float]] = {
    "pi": (1e-30, 1e30),
    "beta": (1e-30, 1e30),
    "s": (1e-30, 1e30),
    "V": (1e-14, 1e14),
    "n": (1e3, 1e30),
}


@dataclass(frozen=True)
class AxisSpec:
    """One swept parameter: either a lo/hi/points range or explicit values."""

    name: str
    lo: float = 0.0
    hi: float = 0.0
    points: int = 20
    spacing: str = "log"  # "log" or "linear"
    explicit: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.name not in AXIS_PARAMETERS:
            raise ValueError(f"unknown sweep parameter {self.name!r}; one of {AXIS_PARAMETERS}")
        if self.explicit is not None:
            if len(self.explicit) < 1:
                raise ValueError("explicit axis needs at least one value")
            return
        if not self.lo < self.hi:
            raise ValueError(f"axis {self.name}: lo must be < hi")
        if self.points < 2:
            raise ValueError(f"axis {self.name}: points must be >= 2")
        if self.spacing not in ("log", "linear"):
            raise ValueError(f"axis {self.name}: spacing must be 'log' or 'linear'")
        if self.spacing == "log" and self.lo <= 0:
            raise ValueError(f"axis {self.name}: log spacing needs lo > 0")

    @classmethod
    def default(cls, name: str) -> "AxisSpec":
        lo, hi = DEFAULT_RANGES[name]
        return cls(name, lo, hi, 20, "log")

    def values(self) -> np.ndarray:
        if self.explicit is not None:
            return np.asarray(self.explicit, dtype=float)
        if self.spacing == "log":
            return np.logspace(math.log10(self.lo), math.log10(self.hi), self.points)
        return np.linspace(self.lo, self.hi, self.points)


@dataclass(frozen=True)
class SweepGrid:
    """Axes (row-major, declaration order) plus fixed parameter values."""

    axes: tuple[AxisSpec, ...] = ()
    fixed: dict[str, float] = field(default_factory=dict)
    cap: int = DEFAULT_POINT_CAP

    def __post_init__(self):
        if len(self.axes) > 3:
            raise ValueError("at most 3 swept axes per run")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise ValueError("duplicate sweep axes")
        for key in self.fixed:
            if key not in AXIS_PARAMETERS:
                raise ValueError(f"unknown fixed parameter {key!r}")

    def size(self) -> int:
        out = 1
        for a in self.axes:
            out *= len(a.values())
        return out


@dataclass(frozen=True)
class SweepRecord:
    """One grid point: inputs, optimal (or fixed) volume, times, regime."""

    pi: float
    beta: float
    s: float
    c: float
    V: float
    n: float
    v_star: float
    t_work: float
    t_io: float
    t_lat: float
    total: float
    performance: float
    regime: str
    error: str | None = None


def _evaluate_point(spec: ComputerSpec, cost: AlgorithmCost, n: float,
                    v: float | None) -> SweepRecord:
    try:
        if v is None:
            sol = optimal_volume(spec, cost, n)
            b = sol.breakdown
            regime = sol.regime
        else:
            b = time_breakdown(spec, cost, n, v)
            regime = classify_regime(b)
        return SweepRecord(pi=spec.pi, beta=spec.beta, s=spec.s, c=spec.c, V=spec.V,
                           n=n, v_star=b.v_used, t_work=b.t_work, t_io=b.t_io,
                           t_lat=b.t_lat, total=b.total, performance=b.performance,
                           regime=regime.value)
    except (ValueError, EvaluationError, OptimizationError) as exc:
        nan = math.nan
        return SweepRecord(pi=spec.pi, beta=spec.beta, s=spec.s, c=spec.c, V=spec.V,
                           n=n, v_star=nan, t_work=nan, t_io=nan, t_lat=nan,
                           total=nan, performance=nan, regime="error", error=str(exc))


def run_sweep(grid: SweepGrid, spec_template: ComputerSpec,
              cost: AlgorithmCost) -> list[SweepRecord]:
    """One record per grid point, row-major over axes in declaration order.

    v_star comes from the volume minimization unless 'v' is swept or fixed, in
    which case the evaluation is at the given volume. Per-point failures are
    recorded in-line with an error marker.
    """
    if grid.size() > grid.cap:
        raise ValueError(f"sweep size {grid.size()} exceeds cap {grid.cap}")

    axis_names = [a.name for a in grid.axes]
    axis_values = [a.values() for a in grid.axes]

    records = []
    for combo in product(*axis_values) if grid.axes else [()]:
        params: dict[str, float] = dict(grid.fixed)
        params.update(zip(axis_names, combo))

        n = params.pop("n", None)
        if n is None:
            raise ValueError("problem size n must be fixed or swept")
        v = params.pop("v", None)
        try:
            spec = replace(spec_template, **{k: float(x) for k, x in params.items()})
        except ValueError as exc:
            nan = math.nan
            records.append(SweepRecord(pi=nan, beta=nan, s=nan, c=nan, V=nan, n=n,
                                       v_star=nan, t_work=nan, t_io=nan, t_lat=nan,
                                       total=nan, performance=nan, regime="error",
                                       error=str(exc)))
            continue
        records.append(_evaluate_point(spec, cost, float(n),
                                       None if v is None else float(v)))
    return records


def peak_performance_over_n(spec: ComputerSpec, cost: AlgorithmCost,
                            n_lo: float = 1e3, n_hi: float = 1e30,
                            points: int = 20) -> tuple[float, float]:
    """Sweep n log-spaced, optimizing v at each n; return (n_peak, perf_peak)."""
    best_n, best_perf = n_lo, -math.inf
    for n in np.logspace(math.log10(n_lo), math.log10(n_hi), points):
        sol = optimal_volume(spec, cost, float(n))
        if sol.breakdown.performance > best_perf:
            best_n, best_perf = float(n), sol.breakdown.performance
    return best_n, best_perf


def saturation_point(records: Sequence[SweepRecord],
                     rel_improvement: float = 0.01) -> int | None:
    """First index along a single-axis sweep where one more grid step improves
    total time by less than rel_improvement; None when it never saturates."""
    totals = [r.total for r in records]
    for i in range(len(totals) - 1):
        if totals[i] - totals[i + 1] < rel_improvement * totals[i]:
            return i
    return None
