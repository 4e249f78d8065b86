"""The homogeneous computer: run-time decomposition and optimal active volume.

A computation on active volume v of a medium with densities (pi, beta, s)
takes the additive time

    f(v) = W(n)/(pi*v) + Q(n, s*v)/(beta*v) + D(L(v, n))/c

and the best-case run time minimizes f over 0 < v <= V.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .costs import AlgorithmCost
from .optimize import OptResult, grid_refine, minimize_bounded

# Smallest active volume considered, as a fraction of V (the feasible set is
# an open interval at zero).
V_FLOOR_FACTOR = 1e-30


class EvaluationError(ArithmeticError):
    """A time component is not representable as a finite double."""


class OptimizationError(RuntimeError):
    """Volume minimization failed; carries the best point found."""

    def __init__(self, message: str, best: "VolumeSolution | None" = None):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class DistanceFn:
    """Farthest signal-travel distance within an active volume: prefactor * v**exponent."""

    prefactor: float = 1.0
    exponent: float = 1.0 / 3.0

    def __post_init__(self):
        if not (self.prefactor > 0 and math.isfinite(self.prefactor)):
            raise ValueError("distance prefactor must be positive and finite")
        if not (self.exponent > 0 and math.isfinite(self.exponent)):
            raise ValueError("distance exponent must be positive and finite")

    def __call__(self, v: float) -> float:
        if v == 0.0:
            return 0.0
        return self.prefactor * v**self.exponent


CUBE_ROOT = DistanceFn(1.0, 1.0 / 3.0)   # 3D medium
SQUARE_ROOT = DistanceFn(1.0, 0.5)       # 2D floor plan


@dataclass(frozen=True)
class ComputerSpec:
    """A homogeneous computing medium.

    pi:   compute density, flop / (volume-unit s)
    beta: external-memory bandwidth density, word / (volume-unit s)
    s:    local memory density, word / volume-unit
    c:    signal propagation speed, m/s
    V:    total volume (m^2 for 2D machines, m^3 for 3D)
    """

    pi: float
    beta: float
    s: float
    c: float
    V: float
    distance: DistanceFn = CUBE_ROOT

    def __post_init__(self):
        for field in ("pi", "beta", "s", "c", "V"):
            value = getattr(self, field)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"ComputerSpec.{field} must be positive and finite, got {value!r}")


class Regime(Enum):
    """Which additive time component dominates."""

    COMPUTE_BOUND = "compute-bound"
    MEMORY_BOUND = "memory-bound"
    LATENCY_BOUND = "latency-bound"


@dataclass(frozen=True)
class TimeBreakdown:
    """The three additive times of one evaluation, all in seconds."""

    t_work: float
    t_io: float
    t_lat: float
    total: float
    v_used: float
    performance: float  # flop/s, W(n)/total


def _ratio(num: float, d1: float, d2: float) -> float:
    # num / (d1*d2) with a log-domain fallback so intermediates never
    # overflow when the result itself is representable.
    if num == 0.0:
        return 0.0
    out = num / d1 / d2
    if math.isfinite(out):
        return out
    try:
        return math.exp(math.log(num) - math.log(d1) - math.log(d2))
    except OverflowError:
        return math.inf


def time_breakdown(spec: ComputerSpec, cost: AlgorithmCost, n: float, v: float) -> TimeBreakdown:
    """Evaluate the run-time decomposition at a given active volume."""
    if not (0.0 < v <= spec.V):
        raise ValueError(f"active volume v={v!r} outside (0, V={spec.V!r}]")
    if n < 1:
        raise ValueError(f"problem size n={n!r} must be >= 1")

    W = cost.work(n)
    Q = cost.io(n, spec.s * v)
    t_work = _ratio(W, spec.pi, v)
    t_io = _ratio(Q, spec.beta, v)
    t_lat = spec.distance(cost.wavefront(v, n)) / spec.c
    total = t_work + t_io + t_lat
    for name, value in (("t_work", t_work), ("t_io", t_io), ("t_lat", t_lat), ("total", total)):
        if not math.isfinite(value):
            raise EvaluationError(f"{name}={value!r} is not representable (n={n!r}, v={v!r})")
    performance = W / total if total > 0 else math.inf
    return TimeBreakdown(t_work=t_work, t_io=t_io, t_lat=t_lat, total=total,
                         v_used=v, performance=performance)


def classify_regime(b: TimeBreakdown) -> Regime:
    """Dominant component; ties break COMPUTE > MEMORY > LATENCY."""
    if b.t_work >= b.t_io and b.t_work >= b.t_lat:
        return Regime.COMPUTE_BOUND
    if b.t_io >= b.t_lat:
        return Regime.MEMORY_BOUND
    return Regime.LATENCY_BOUND


@dataclass(frozen=True)
class VolumeSolution:
    """Optimal active volume with its breakdown and optimizer diagnostics."""

    v_star: float
    breakdown: TimeBreakdown
    regime: Regime
    opt: OptResult


def optimal_volume(
    spec: ComputerSpec,
    cost: AlgorithmCost,
    n: float,
    rel_tol: float = 1e-9,
    max_iter: int = 200,
    grid_points: int = 256,
    grid_rounds: int = 3,
) -> VolumeSolution:
    """Minimize total time over the active volume, searching in log(v).

    Brent handles the (empirically unimodal) built-in costs; custom costs and
    non-converged runs additionally go through grid refinement.
    """
    lo = math.log(spec.V) + math.log(V_FLOOR_FACTOR)
    hi = math.log(spec.V)

    def objective(x: float) -> float:
        # exp(log(V)) can land one ulp above V; clamp to stay feasible.
        return time_breakdown(spec, cost, n, min(math.exp(x), spec.V)).total

    try:
        result = minimize_bounded(objective, lo, hi, rel_tol=rel_tol, max_iter=max_iter)
        if not result.converged or cost.name == "CUSTOM":
            refined = grid_refine(objective, lo, hi, points=grid_points, rounds=grid_rounds)
            if refined.f_star < result.f_star or not result.converged:
                result = refined
    except (ValueError, EvaluationError) as exc:
        raise OptimizationError(f"volume minimization failed: {exc}") from exc

    v_star = min(math.exp(result.x_star), spec.V)
    breakdown = time_breakdown(spec, cost, n, v_star)
    return VolumeSolution(v_star=v_star, breakdown=breakdown,
                          regime=classify_regime(breakdown), opt=result)
