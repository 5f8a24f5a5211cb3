"""Runtime scaling of the three ways to evaluate P(x)."""

from __future__ import annotations

import math
import timeit
from dataclasses import dataclass
from typing import Sequence

from .fejer import EvalStrategy
from .indicator import indicator_P
from .numerics import linear_fit

DEFAULT_XS = (1e4, 1e5, 1e6, 1e7)
# non-integer, off-resonance offsets so every strategy runs its general path
X_OFFSET = 0.318

STRATEGY_LABELS = {
    EvalStrategy.COSINE_POLY: "A",
    EvalStrategy.SINE_QUOTIENT: "B",
    EvalStrategy.RPF: "C",
}


@dataclass(frozen=True)
class Timing:
    strategy: EvalStrategy
    x: float
    seconds: float


@dataclass(frozen=True)
class ScalingFit:
    strategy: EvalStrategy
    exponent: float
    residual: float


def time_indicator(
    x: float, strategy: EvalStrategy, reps: int = 3, min_time: float = 0.05, rpf_terms: int = 2
) -> float:
    """Best-of-reps seconds per call of indicator_P(x)."""
    timer = timeit.Timer(lambda: indicator_P(x, strategy, rpf_terms=rpf_terms))
    number = 1
    while True:
        if timer.timeit(number) >= min_time or number >= 1 << 20:
            break
        number *= 2
    return min(timer.repeat(repeat=reps, number=number)) / number


def run_benchmark(
    xs: Sequence[float] = DEFAULT_XS,
    strategies: Sequence[EvalStrategy] = tuple(STRATEGY_LABELS),
    reps: int = 3,
) -> list[Timing]:
    out = []
    for strategy in strategies:
        for x in xs:
            xx = x + X_OFFSET
            out.append(Timing(strategy, xx, time_indicator(xx, strategy, reps)))
    return out


def fit_exponents(timings: Sequence[Timing]) -> dict[EvalStrategy, ScalingFit]:
    """Log-log slope of runtime against x per strategy."""
    fits = {}
    for strategy in {t.strategy for t in timings}:
        rows = [t for t in timings if t.strategy is strategy]
        if len(rows) < 2:
            continue
        slope, _, resid = linear_fit(
            [math.log(t.x) for t in rows], [math.log(t.seconds) for t in rows]
        )
        fits[strategy] = ScalingFit(strategy, slope, resid)
    return fits
