"""The sharp prime indicator P(x) and the facts we can check about it.

For x > 1,  P(x) = (1/x) * sum_{i=2}^{ceil(sqrt x)} F(x, i),  and P = 0 for x <= 1.
At an integer n this is (1/n) * sum of d^2 over divisors 2 <= d <= ceil(sqrt n),
so P(n) = 0 exactly at the odd primes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import oracle
from .fejer import (
    DEFAULT_GUARD,
    CertifiedValue,
    EvalStrategy,
    ResonanceGuard,
    fejer,
    fejer_rpf,
)
from .numerics import quadratic_coefficient_fit, second_derivative_5pt


@dataclass(frozen=True)
class IndicatorValue:
    x: float
    value: float
    n_terms: int


@dataclass(frozen=True)
class JumpReport:
    m: int
    predicted: float
    measured: float
    h: float

    @property
    def rel_error(self) -> float:
        return abs(self.measured - self.predicted) / self.predicted


def ceil_sqrt(x: float) -> int:
    """ceil(sqrt(x)) for x >= 0, exact at perfect squares and for integer x."""
    if x <= 0:
        return 0
    if float(x).is_integer():
        n = int(x)
        r = math.isqrt(n)
        return r if r * r == n else r + 1
    r = math.ceil(math.sqrt(x))
    # guard the float sqrt at both sides of r
    while (r - 1) * (r - 1) >= x:
        r -= 1
    while r * r < x:
        r += 1
    return r


def indicator_P(
    x: float,
    strategy: EvalStrategy = EvalStrategy.AUTO,
    guard: ResonanceGuard = DEFAULT_GUARD,
    rpf_terms: int = 2,
) -> IndicatorValue:
    if x <= 1:
        return IndicatorValue(x, 0.0, 0)
    top = ceil_sqrt(x)
    total = math.fsum(fejer(x, i, strategy, guard, rpf_terms) for i in range(2, top + 1))
    return IndicatorValue(x, total / x, top - 1)


def indicator_P_rpf(x: float, K: int, guard: ResonanceGuard = DEFAULT_GUARD) -> CertifiedValue:
    """P(x) from truncated partial fractions, with the summed tail bound."""
    if x <= 1:
        return CertifiedValue(0.0, 0.0, "P = 0 for x <= 1")
    parts = [fejer_rpf(x, i, K, guard) for i in range(2, ceil_sqrt(x) + 1)]
    value = math.fsum(c.value for c in parts) / x
    bound = math.fsum(c.abs_error_bound for c in parts) / x
    return CertifiedValue(value, bound, "sum of per-index RPF bounds / x")


def _divisor_square_sum(n: int) -> int:
    top = ceil_sqrt(n)
    return sum(d * d for d in oracle.divisors(n) if 2 <= d <= top)


def indicator_P_integer(n: int) -> float:
    """Exact divisor-sum form, rounded once to a float."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return _divisor_square_sum(n) / n


def composite_bounds(n: int) -> tuple[float, float]:
    """(4/n, (1/n) * sum_{d=2}^{ceil(sqrt n)} d^2) for composite n.

    The upper sum runs to ceil(sqrt n), the same range P(n) uses.
    """
    if n < 4 or oracle.is_prime(n):
        raise ValueError(f"{n} is not a composite integer")
    top = ceil_sqrt(n)
    upper = top * (top + 1) * (2 * top + 1) // 6 - 1
    return 4 / n, upper / n


def attains_lower_bound(n: int) -> bool:
    """True iff 2 is the only divisor of n in [2, ceil(sqrt n)]."""
    top = ceil_sqrt(n)
    return [d for d in oracle.divisors(n) if 2 <= d <= top] == [2]


def jump_predicted(m: int) -> float:
    if m < 1:
        raise ValueError("m must be >= 1")
    return 2 * math.pi**2 / (m * m * math.sin(math.pi / (m + 1)) ** 2)


def jump_measured(
    m: int,
    h: float = 1e-4,
    strategy: EvalStrategy = EvalStrategy.AUTO,
    extrapolate: bool = True,
) -> JumpReport:
    """Second-derivative jump of P across m^2 from one-sided stencils.

    Each one-sided limit uses the 5-point stencil at m^2 +/- 10h. With
    ``extrapolate`` the limit is taken linearly from offsets 10h and 20h,
    which removes the first-order bias from P''' near the square.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if not 1e-6 <= h <= 1e-2:
        raise ValueError("h must lie in [1e-6, 1e-2]")

    def f(x):
        return indicator_P(x, strategy).value

    x0 = m * m
    delta = 10 * h

    def side(sign):
        d1 = second_derivative_5pt(f, x0 + sign * delta, h)
        if not extrapolate:
            return d1
        d2 = second_derivative_5pt(f, x0 + sign * 2 * delta, h)
        return 2 * d1 - d2

    return JumpReport(m, jump_predicted(m), side(+1) - side(-1), h)


def local_quadratic_coefficient(p: int) -> float:
    """C_p with P(p + s) ~ C_p s^2 near an odd prime p."""
    if p % 2 == 0 or not oracle.is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    total = math.fsum(1.0 / math.sin(math.pi * p / i) ** 2 for i in range(2, ceil_sqrt(p) + 1))
    return math.pi**2 / p * total


def fitted_quadratic_coefficient(p: int, half_width: float = 1e-3, n_points: int = 9) -> float:
    """Least-squares s^2 coefficient of P on a symmetric grid around p."""
    return quadratic_coefficient_fit(
        lambda x: indicator_P(x).value, float(p), half_width, n_points
    )


def is_odd_prime_via_P(n: int) -> bool:
    if n < 2:
        raise ValueError("n must be >= 2")
    return _divisor_square_sum(n) == 0
