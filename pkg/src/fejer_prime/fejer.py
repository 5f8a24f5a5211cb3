"""The single Fejer term F(x, i) and its three representations.

F(x, i) = i + 2 * sum_{k=1}^{i-1} (i - k) cos(2 pi k x / i)
        = sin^2(pi x) / sin^2(pi x / i)

At integers it acts as a divisor filter: F(n, i) = i^2 when i | n and 0
otherwise.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from .numerics import round_half_up, sinc_minus_one, sinpi


class EvalStrategy(enum.Enum):
    COSINE_POLY = "cosine"
    SINE_QUOTIENT = "sine"
    RPF = "rpf"
    AUTO = "auto"


@dataclass(frozen=True)
class ResonanceGuard:
    """Thresholds for resonance detection in the guarded sine quotient."""

    eps_int: float = 1e-12
    eps_res: float = 1e-6

    def __post_init__(self):
        if not (0.0 < self.eps_int < self.eps_res < 1.0):
            raise ValueError("need 0 < eps_int < eps_res < 1")

    @staticmethod
    def taylor_window(i: int) -> float:
        return min(i / 8.0, 1.0 / math.pi)

    def is_resonant(self, x: float, i: int) -> bool:
        t = x / i
        return abs(t - round(t)) < max(self.eps_res, 0.1 / i) or abs(sinpi(t)) < self.eps_res


DEFAULT_GUARD = ResonanceGuard()


class NearestLattice(NamedTuple):
    m: int
    t: float


@dataclass(frozen=True)
class CertifiedValue:
    value: float
    abs_error_bound: float
    formula: str = ""

    def __post_init__(self):
        if not self.abs_error_bound >= 0.0:
            raise ValueError("abs_error_bound must be >= 0")


def _check_index(i: int) -> None:
    if isinstance(i, bool) or not isinstance(i, int):
        raise TypeError("i must be an int")
    if i < 2:
        raise ValueError(f"i must be >= 2, got {i}")


def nearest_lattice(x: float, i: int) -> NearestLattice:
    """m = floor(x/i + 1/2), t = x - i*m with |t| <= i/2."""
    _check_index(i)
    m = round_half_up(x / i)
    t = x - i * m
    # x/i is rounded; repair the rare case where that moved us off the tie rule
    if t >= i / 2:
        m += 1
        t = x - i * m
    elif t < -i / 2:
        m -= 1
        t = x - i * m
    return NearestLattice(m, t)


def fejer_cosine_poly(x: float, i: int) -> float:
    """Direct O(i) trigonometric polynomial."""
    _check_index(i)
    xr = math.fmod(x, i)  # exact; F has period i
    w = 2.0 * math.pi * xr / i
    total = float(i)
    for k in range(1, i):
        total += 2.0 * (i - k) * math.cos(k * w)
    return total


def taylor_alpha(i: int) -> float:
    return (1.0 - 1.0 / (i * i)) / 6.0


def surrogate_remainder_constant(eps: float = 0.25) -> float:
    """Constant C~ with |surrogate - F| <= i^2 C~ (pi t)^4 inside the window.

    Squaring s = 1 - alpha z^2 + r with |r| <= C(eps) z^4 and z = pi*t <= 1
    gives |s^2 - (1 - 2 alpha z^2)| <= (alpha^2 + 2C + C^2) z^4, alpha <= 1/6.
    """
    c = 1.0 - (math.pi * eps) ** 2 / 6.0 - (math.pi * eps) ** 4 / 120.0
    big_c = (1.0 / 120.0) / (c * c)
    return 1.0 / 36.0 + 2.0 * big_c + big_c * big_c


def fejer_taylor_surrogate(x: float, i: int, guard: ResonanceGuard = DEFAULT_GUARD) -> float:
    """Quadratic even expansion around the nearest multiple of i, clamped at 0."""
    t = nearest_lattice(x, i).t
    if abs(t) > guard.taylor_window(i):
        raise ValueError(f"offset {t} outside the Taylor window for i={i}")
    z = math.pi * t
    return max(0.0, i * i * (1.0 - 2.0 * taylor_alpha(i) * z * z))


def fejer_sine_quotient(x: float, i: int, guard: ResonanceGuard = DEFAULT_GUARD) -> float:
    """sin^2(pi x)/sin^2(pi x/i) with the resonance guard of the O(sqrt x) scheme."""
    _check_index(i)
    if guard.is_resonant(x, i):
        n = round(x)
        if abs(x - n) < guard.eps_int and n % i == 0:
            return float(i * i)
        if abs(nearest_lattice(x, i).t) <= guard.taylor_window(i):
            return fejer_taylor_surrogate(x, i, guard)
        return fejer_cosine_poly(x, i)
    ratio = sinpi(x) / sinpi(x / i)
    return ratio * ratio


def rpf_tail_factor(K: int) -> float:
    """Sup over |t| <= i/2 of i^2 * (tail of the pole sum beyond K)."""
    if K == 0:
        return math.pi**2 / 2.0 + 1.0
    return 1.0 / K + 1.0 / (K + 1)


def fejer_rpf(
    x: float, i: int, K: int, guard: ResonanceGuard = DEFAULT_GUARD
) -> CertifiedValue:
    """Truncated resonant partial fractions with a rigorous tail bound.

    Sums the 2K+1 poles nearest to x. The remainder is at most
    (sin^2(pi x)/pi^2) * (1/K + 1/(K+1)) for K >= 1 and
    (sin^2(pi x)/pi^2) * (pi^2/2 + 1) for K = 0.
    """
    _check_index(i)
    if K < 0:
        raise ValueError("K must be >= 0")
    m, t = nearest_lattice(x, i)
    if abs(t) < guard.eps_int:
        return CertifiedValue(float(i * i), 0.0, "exact i^2 at a multiple of i")
    s = sinpi(x)
    s2 = s * s
    # poles nearest first, pairing +r and -r
    pole_sum = 1.0 / (t * t)
    for r in range(1, K + 1):
        pole_sum += 1.0 / (t - i * r) ** 2 + 1.0 / (t + i * r) ** 2
    value = (i * i / math.pi**2) * s2 * pole_sum
    if K == 0:
        formula = "sin^2(pi x)/pi^2 * (pi^2/2 + 1)"
    else:
        formula = "sin^2(pi x)/pi^2 * (1/K + 1/(K+1))"
    return CertifiedValue(value, s2 / math.pi**2 * rpf_tail_factor(K), formula)


def pole_sum_bounds(x: float, i: int) -> tuple[float, float]:
    """Bracket for sum_m 1/(x - i m)^2 from the dominant nearest pole."""
    t = nearest_lattice(x, i).t
    if t == 0.0:
        raise ValueError("x is a multiple of i; the pole sum is singular there")
    lower = 1.0 / (t * t)
    return lower, lower + math.pi**2 / (i * i)


def fejer(
    x: float,
    i: int,
    strategy: EvalStrategy = EvalStrategy.AUTO,
    guard: ResonanceGuard = DEFAULT_GUARD,
    rpf_terms: int = 2,
) -> float:
    if strategy is EvalStrategy.COSINE_POLY:
        return fejer_cosine_poly(x, i)
    if strategy is EvalStrategy.RPF:
        return fejer_rpf(x, i, rpf_terms, guard).value
    return fejer_sine_quotient(x, i, guard)


# Lattice-centered forms. Callers that know x = i*m + t with t exact (for
# example x = n + t around an integer n) avoid the rounding in forming x.


def fejer_lattice(t: float, i: int) -> float:
    """F(i*m + t, i) for an offset |t| <= i/2."""
    if t == 0.0:
        return float(i * i)
    ratio = sinpi(t) / sinpi(t / i)
    return ratio * ratio


def fejer_deficit(t: float, i: int) -> float:
    """F(i*m + t, i)/i^2 - 1, accurate for tiny t."""
    if t == 0.0:
        return 0.0
    a = sinc_minus_one(t)
    b = sinc_minus_one(t / i)
    s_minus_one = (a - b) / (1.0 + b)
    return s_minus_one * (s_minus_one + 2.0)


def fejer_offset(n: int, t: float, i: int) -> float:
    """F(n + t, i) for an integer n and a small offset t.

    The offset from the nearest multiple of i is k + t with k an integer,
    and sin^2(pi (k + t)) = sin^2(pi t), so t never gets absorbed into n.
    """
    r = n % i
    k = r - i * round_half_up((r + t) / i)
    if k == 0:
        return fejer_lattice(t, i)
    ratio = sinpi(t) / sinpi((k + t) / i)
    return ratio * ratio
