"""Kernel cost models: I/O volume Q, flop count W, and dependency wavefront L.

Q is a function of the problem size n and the effective fast memory S (words);
W depends on n only; the wavefront L depends on the active volume v (and n for
matrix multiply). All word counts assume IEEE double precision words.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

# Floor on the fast-memory size used in the FFT I/O denominator; avoids the
# log(S) singularity for absurdly small s*v.
FFT_MIN_FAST_MEMORY = 4.0


@dataclass(frozen=True)
class AlgorithmCost:
    """Cost triple of one kernel, plus its output size for weak scaling."""

    name: str
    io: Callable[[float, float], float]          # (n, S) -> words moved
    work: Callable[[float], float]               # n -> flops
    wavefront: Callable[[float, float], float]   # (v, n) -> dependency volume
    output_size: Callable[[float], float]        # n -> words of output


def mxm_cost() -> AlgorithmCost:
    """Square matrix multiply C = A B of dimension n, non-Strassen."""

    def io(n: float, S: float) -> float:
        return max(2.0 * n**3 / math.sqrt(S) - 3.0 * S, 0.0)

    return AlgorithmCost(
        name="MXM",
        io=io,
        work=lambda n: 2.0 * n**3,
        wavefront=lambda v, n: v / n,
        output_size=lambda n: n**2,
    )


def cg_cost() -> AlgorithmCost:
    """One conjugate-gradient iteration on an n-dimensional system.

    The cost of applying the matrix itself is not modeled; the wavefront 2v
    captures the reduce-and-broadcast of the global dot products.
    """

    def io(n: float, S: float) -> float:
        return max(7.0 * n - 4.0 * S, 0.0)

    return AlgorithmCost(
        name="CG",
        io=io,
        work=lambda n: 17.0 * n,
        wavefront=lambda v, n: 2.0 * v,
        output_size=lambda n: n,
    )


def fft_cost() -> AlgorithmCost:
    """1D radix-2 FFT of length n; every output depends on every input."""

    def io(n: float, S: float) -> float:
        s_eff = max(S, FFT_MIN_FAST_MEMORY)
        return max(2.0 * n * math.log2(n) / math.log2(s_eff) - 2.0 * S, 0.0)

    return AlgorithmCost(
        name="FFT",
        io=io,
        work=lambda n: (8.0 / 3.0) * n * math.log2(n),
        wavefront=lambda v, n: v,
        output_size=lambda n: n,
    )


@dataclass(frozen=True)
class CostCoefficients:
    """Parameterized cost family: Q = a*n^p/S^q + r*S, W = b*n^w*log2(n)^l,
    L = g*v^h/n^k, output size n^out_exp.

    Q is clamped at zero. a, b, g must be non-negative; q >= 0 and r <= 0 so
    that Q is non-increasing in S.
    """

    a: float = 0.0
    p: float = 0.0
    q: float = 0.0
    r: float = 0.0
    b: float = 1.0
    w: float = 1.0
    l: float = 0.0
    g: float = 0.0
    h: float = 1.0
    k: float = 0.0
    out_exp: float = 1.0

    def __post_init__(self):
        for field in ("a", "b", "g"):
            if getattr(self, field) < 0:
                raise ValueError(f"coefficient {field} must be non-negative")
        if self.q < 0:
            raise ValueError("exponent q must be non-negative (Q non-increasing in S)")
        if self.r > 0:
            raise ValueError("coefficient r must be non-positive (Q non-increasing in S)")
        for field in ("p", "q", "w", "l", "h", "k", "out_exp"):
            if not math.isfinite(getattr(self, field)):
                raise ValueError(f"exponent {field} must be finite")


def _powprod(scale: float, *pairs: tuple[float, float]) -> float:
    # scale * prod(base**exp), computed via logs to survive extreme exponents.
    if scale == 0.0:
        return 0.0
    acc = math.log(scale)
    for base, exp in pairs:
        if exp == 0.0:
            continue
        if base <= 0.0:
            return 0.0
        acc += exp * math.log(base)
    try:
        return math.exp(acc)
    except OverflowError:
        return math.inf


def custom_cost(coeffs: CostCoefficients) -> AlgorithmCost:
    """Build a cost object from a CostCoefficients record."""
    c = coeffs

    def io(n: float, S: float) -> float:
        return max(_powprod(c.a, (n, c.p), (S, -c.q)) + c.r * S, 0.0)

    def work(n: float) -> float:
        lg = math.log2(n) if n > 1 else 0.0
        return _powprod(c.b, (n, c.w), (lg, c.l)) if c.l != 0 else _powprod(c.b, (n, c.w))

    def wavefront(v: float, n: float) -> float:
        return _powprod(c.g, (v, c.h), (n, -c.k))

    return AlgorithmCost(
        name="CUSTOM",
        io=io,
        work=work,
        wavefront=wavefront,
        output_size=lambda n: _powprod(1.0, (n, c.out_exp)),
    )


BUILTIN_COSTS: dict[str, Callable[[], AlgorithmCost]] = {
    "mxm": mxm_cost,
    "cg": cg_cost,
    "fft": fft_cost,
}
