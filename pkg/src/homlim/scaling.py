"""Strong/weak parallel efficiency and the generalized Amdahl/Gustafson laws.

Efficiencies evaluate f at the given volumes as-is; set reoptimize=True to
compare minimized times instead (exploratory use only).
"""
from __future__ import annotations

import math
from enum import Enum

from .costs import AlgorithmCost
from .model import ComputerSpec, TimeBreakdown, optimal_volume, time_breakdown

# Scaling baseline when no explicit v0 is given.
DEFAULT_V0_FACTOR = 1e-6


class KPolicy(Enum):
    """Which problem metric is held constant per unit volume in weak scaling."""

    OUTPUT_SIZE = "output"
    INPUT_N = "n"
    WORK = "work"


def k_value(policy: KPolicy, cost: AlgorithmCost, n: float) -> float:
    if policy is KPolicy.OUTPUT_SIZE:
        return cost.output_size(n)
    if policy is KPolicy.INPUT_N:
        return float(n)
    return cost.work(n)


def invert_k(policy: KPolicy, cost: AlgorithmCost, target: float,
             rel_tol: float = 1e-9, max_iter: int = 400) -> float:
    """Solve K(n) = target for n by monotone bisection in log(n)."""
    if target <= 0:
        raise ValueError("target must be positive")
    k1 = k_value(policy, cost, 1.0)
    if k1 > target * (1.0 + rel_tol):
        raise ValueError(f"target {target!r} below K(1)={k1!r}")

    lo = 0.0  # log n
    hi = math.log(2.0)
    while k_value(policy, cost, math.exp(hi)) < target:
        lo = hi
        hi *= 2.0
        if hi > 700.0:
            raise ValueError(f"target {target!r} out of representable range")

    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        k = k_value(policy, cost, math.exp(mid))
        if abs(k - target) <= rel_tol * target:
            return math.exp(mid)
        if k < target:
            lo = mid
        else:
            hi = mid
    return math.exp(0.5 * (lo + hi))


def _total(spec: ComputerSpec, cost: AlgorithmCost, n: float, v: float,
           reoptimize: bool) -> float:
    if reoptimize:
        return optimal_volume(spec, cost, n).breakdown.total
    return time_breakdown(spec, cost, n, v).total


def strong_efficiency(spec: ComputerSpec, cost: AlgorithmCost, n: float,
                      v0: float, v: float, reoptimize: bool = False) -> float:
    """P_eff = f(v0)*v0 / (f(v)*v) at fixed problem size."""
    if v < v0:
        raise ValueError(f"v={v!r} must be >= v0={v0!r}")
    f0 = _total(spec, cost, n, v0, reoptimize)
    fv = _total(spec, cost, n, v, reoptimize)
    return (f0 * v0) / (fv * v)


def weak_efficiency(spec: ComputerSpec, cost: AlgorithmCost, k: KPolicy,
                    n0: float, v0: float, v: float, reoptimize: bool = False) -> float:
    """P_weak = f(v, n) / f(v0, n0) with n solved from K(n)/v = K(n0)/v0."""
    if v < v0:
        raise ValueError(f"v={v!r} must be >= v0={v0!r}")
    n = invert_k(k, cost, k_value(k, cost, n0) * v / v0)
    f0 = _total(spec, cost, n0, v0, reoptimize)
    fv = _total(spec, cost, n, v, reoptimize)
    return fv / f0


def scaled_problem_size(cost: AlgorithmCost, k: KPolicy, n0: float,
                        v0: float, v: float) -> float:
    """The problem size the K policy assigns to volume v."""
    return invert_k(k, cost, k_value(k, cost, n0) * v / v0)


def parallel_fraction(spec: ComputerSpec, cost: AlgorithmCost, n: float, v: float) -> float:
    """Fraction of the run time spent in work and I/O; the latency part is sequential."""
    b = time_breakdown(spec, cost, n, v)
    return (b.t_work + b.t_io) / b.total


def _latency_fraction(b: TimeBreakdown) -> float:
    return b.t_lat / b.total


def generalized_speedup(spec: ComputerSpec, cost: AlgorithmCost, n: float,
                        v0: float, v: float) -> float:
    """Amdahl generalized: 1 / (v0/v + (1 - v0/v) * T_L(v0)/T(v0))."""
    if v < v0:
        raise ValueError(f"v={v!r} must be >= v0={v0!r}")
    t = _latency_fraction(time_breakdown(spec, cost, n, v0))
    return 1.0 / (v0 / v + (1.0 - v0 / v) * t)


def speedup_limit(spec: ComputerSpec, cost: AlgorithmCost, n: float, v0: float) -> float:
    """T(v0)/T_L(v0), the ceiling of the generalized speedup; inf when L == 0."""
    b = time_breakdown(spec, cost, n, v0)
    if b.t_lat == 0.0:
        return math.inf
    return b.total / b.t_lat


def achievable_speedup(spec: ComputerSpec, cost: AlgorithmCost, n: float,
                       v0: float, v: float) -> float:
    """Variant ceiling T(v0)/T_L(v) using the latency at the scaled volume."""
    b0 = time_breakdown(spec, cost, n, v0)
    bv = time_breakdown(spec, cost, n, v)
    if bv.t_lat == 0.0:
        return math.inf
    return b0.total / bv.t_lat


def scaled_speedup(spec: ComputerSpec, cost: AlgorithmCost, n0: float,
                   v0: float, v: float, k: KPolicy = KPolicy.OUTPUT_SIZE) -> float:
    """Gustafson generalized: v/v0 + (1 - v/v0) * T_L(v0)/T(v0).

    The K policy fixes how the problem grows; the closed form depends only on
    the sequential fraction at (n0, v0).
    """
    if v < v0:
        raise ValueError(f"v={v!r} must be >= v0={v0!r}")
    t = _latency_fraction(time_breakdown(spec, cost, n0, v0))
    return v / v0 + (1.0 - v / v0) * t
