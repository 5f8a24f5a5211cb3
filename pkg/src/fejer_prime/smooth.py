"""Smooth analogues of the divisor functions built from the Fejer filter.

    P_tau(x)   = sum_{i>=2} phi(i/(x+1)) F(x,i)/i^2 - 1
    P_sigma(x) = sum_{i>=2} phi(i/(x+1)) F(x,i)/i   - x

At an integer n these are smoothed versions of tau(n) - 2 and
sigma(n) - n - 1, and at an odd prime p both are slightly negative.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import oracle
from .cutoff import (
    _check_kappa,
    phi_at_exponent,
    phi_complement_at_exponent,
    phi_complement_ratio,
    phi_ratio,
)
from .fejer import (
    DEFAULT_GUARD,
    ResonanceGuard,
    fejer_deficit,
    fejer_offset,
    fejer_sine_quotient,
)
from .numerics import quadratic_coefficient_fit, sinpi

MAX_TERMS = 10**6
DEFAULT_EPS = 1e-12


class SeriesKind(enum.Enum):
    TAU = "tau"
    SIGMA = "sigma"


class TruncationError(RuntimeError):
    """The certified cut index would exceed MAX_TERMS."""


@dataclass(frozen=True)
class TruncationPlan:
    M: int
    eps: float
    kind: SeriesKind
    kappa: float
    interval: tuple[float, float]
    tail_bound: float


@dataclass(frozen=True)
class SmoothValue:
    x: float
    kappa: float
    value: float
    tail_bound: float
    M_used: int


def tail_bound(kind: SeriesKind, M: int, kappa: float, b: float) -> float:
    """Geometric tail majorant for indices beyond M on [a, b].

    For u = i/(x+1) >= 1, phi(u) <= exp(-2 kappa (u - 1)) <= r^(i - b - 1)
    with r = exp(-2 kappa/(b+1)); the shift by b + 1 carries the e^{2 kappa}
    factor, so the tau tail is at most r^(M - b)/(1 - r).
    """
    c = 2.0 * kappa / (b + 1.0)
    one_minus_r = -math.expm1(-c)
    decay = math.exp(-c * (M - b))
    if kind is SeriesKind.TAU:
        return decay / one_minus_r
    return (M + 2) * decay / (one_minus_r * one_minus_r)


def plan_truncation(
    kind: SeriesKind,
    interval: tuple[float, float],
    kappa: float,
    eps: float = DEFAULT_EPS,
    max_terms: int = MAX_TERMS,
) -> TruncationPlan:
    a, b = interval
    _check_kappa(kappa)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if not 0 < a <= b:
        raise ValueError("need 0 < a <= b")
    floor_m = math.ceil(b + 1)
    c = 2.0 * kappa / (b + 1.0)
    if kind is SeriesKind.TAU:
        need = b + (-math.log(-math.expm1(-c)) - math.log(eps)) / c
        M = max(floor_m, math.ceil(need))
    else:
        M = _sigma_cut(floor_m, kappa, b, eps, max_terms)
    if M > max_terms:
        raise TruncationError(f"cut index {M} exceeds {max_terms}; kappa too small")
    return TruncationPlan(M, eps, kind, kappa, (a, b), tail_bound(kind, M, kappa, b))


def _sigma_cut(floor_m: int, kappa: float, b: float, eps: float, max_terms: int) -> int:
    """Smallest M >= floor_m with the sigma tail majorant <= eps."""

    def ok(M):
        return tail_bound(SeriesKind.SIGMA, M, kappa, b) <= eps

    if ok(floor_m):
        return floor_m
    # the majorant increases while M + 2 < r/(1-r), then decreases for good
    c = 2.0 * kappa / (b + 1.0)
    turn = max(floor_m, math.ceil(1.0 / -math.expm1(-c)) - 2)
    lo = turn
    if ok(lo):
        return lo
    step = 1
    hi = lo + step
    while not ok(hi):
        if hi > max_terms:
            return hi
        lo = hi
        step *= 2
        hi = lo + step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _check_x(x: float) -> None:
    if not x > 0:
        raise ValueError(f"x must be > 0, got {x}")


def p_tau(
    x: float, kappa: float, eps: float = DEFAULT_EPS, guard: ResonanceGuard = DEFAULT_GUARD
) -> SmoothValue:
    _check_x(x)
    plan = plan_truncation(SeriesKind.TAU, (x, x), kappa, eps)
    terms = [
        phi_ratio(i, x + 1, kappa) * fejer_sine_quotient(x, i, guard) / (i * i)
        for i in range(2, plan.M + 1)
    ]
    return SmoothValue(x, kappa, math.fsum(terms) - 1.0, plan.tail_bound, plan.M)


def p_sigma(
    x: float, kappa: float, eps: float = DEFAULT_EPS, guard: ResonanceGuard = DEFAULT_GUARD
) -> SmoothValue:
    _check_x(x)
    plan = plan_truncation(SeriesKind.SIGMA, (x, x), kappa, eps)
    terms = [
        phi_ratio(i, x + 1, kappa) * fejer_sine_quotient(x, i, guard) / i
        for i in range(2, plan.M + 1)
    ]
    terms.append(-x)
    return SmoothValue(x, kappa, math.fsum(terms), plan.tail_bound, plan.M)


def p_tau_integer(n: int, kappa: float, exact_residual: bool = False) -> float:
    """sum_{d | n, d >= 2} phi(d/(n+1)) - 1.

    With ``exact_residual`` the sum is regrouped as
    (tau(n) - 2) - sum (1 - phi), which keeps the tiny prime residual
    that the literal form rounds away once phi is within an ulp of 1.
    """
    _check_kappa(kappa)
    if n < 2:
        raise ValueError("n must be >= 2")
    divs = oracle.divisors(n)[1:]
    if exact_residual:
        return (len(divs) - 1) - math.fsum(phi_complement_ratio(d, n + 1, kappa) for d in divs)
    return math.fsum(phi_ratio(d, n + 1, kappa) for d in divs) - 1.0


def p_sigma_integer(n: int, kappa: float, exact_residual: bool = False) -> float:
    """sum_{d | n, d >= 2} d phi(d/(n+1)) - n."""
    _check_kappa(kappa)
    if n < 2:
        raise ValueError("n must be >= 2")
    divs = oracle.divisors(n)[1:]
    if exact_residual:
        return (sum(divs) - n) - math.fsum(d * phi_complement_ratio(d, n + 1, kappa) for d in divs)
    return math.fsum([d * phi_ratio(d, n + 1, kappa) for d in divs] + [-n])


# Centered evaluation around an integer n. Writing x = n + t and keeping t
# separate resolves offsets far below one ulp of x, which is where the
# companion zeros of large kappa sit.


def _centered_terms(
    kind: SeriesKind, n: int, t: float, kappa: float, eps: float
) -> tuple[list, float, int]:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive int")
    if not abs(t) < 1.0:
        raise ValueError("offset must satisfy |t| < 1")
    _check_kappa(kappa)
    x = n + t
    s = sinpi(t)
    # beyond i >= 2x every index is a non-divisor with F <= i^2 sin^2(pi t)/(4 x^2)
    rho = min(1.0, s * s / (4.0 * x * x))
    budget = eps / rho if rho > 0 else 0.5
    budget = min(budget, 0.5)
    plan = plan_truncation(kind, (x, x), kappa, budget)
    M = max(plan.M, math.ceil(2 * x))
    if M > MAX_TERMS:
        raise TruncationError(f"cut index {M} exceeds {MAX_TERMS}")
    weight_pow = 2 if kind is SeriesKind.TAU else 1
    terms = []
    for i in range(2, M + 1):
        # cutoff exponent 2 kappa (i/(x+1) - 1) with the integer part exact
        z = 2.0 * kappa * ((i - n - 1) - t) / (x + 1.0)
        w = 1 if kind is SeriesKind.TAU else i
        if n % i == 0:
            e = fejer_deficit(t, i)
            terms.append(w)
            terms.append(-w * phi_complement_at_exponent(z))
            terms.append(w * phi_at_exponent(z) * e)
        else:
            terms.append(phi_at_exponent(z) * fejer_offset(n, t, i) / i**weight_pow)
    return terms, rho * tail_bound(kind, M, kappa, x), M


def p_tau_centered(n: int, t: float, kappa: float, eps: float = DEFAULT_EPS) -> SmoothValue:
    """P_tau(n + t) evaluated with the offset t kept exact."""
    terms, tb, M = _centered_terms(SeriesKind.TAU, n, t, kappa, eps)
    terms.append(-1.0)
    return SmoothValue(n + t, kappa, math.fsum(terms), tb, M)


def p_sigma_centered(n: int, t: float, kappa: float, eps: float = DEFAULT_EPS) -> SmoothValue:
    """P_sigma(n + t) evaluated with the offset t kept exact."""
    terms, tb, M = _centered_terms(SeriesKind.SIGMA, n, t, kappa, eps)
    terms.append(-float(n))
    terms.append(-t)
    return SmoothValue(n + t, kappa, math.fsum(terms), tb, M)


def _check_odd_prime(p: int) -> None:
    if p % 2 == 0 or not oracle.is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def b_infinity_tau(p: int) -> float:
    """Limit as kappa grows of the s^2 coefficient of P_tau(p + s)."""
    _check_odd_prime(p)
    pi2 = math.pi**2
    terms = [pi2 / (i * i * math.sin(math.pi * p / i) ** 2) for i in range(2, p)]
    terms.append(0.5 * pi2 / ((p + 1) ** 2 * math.sin(math.pi / (p + 1)) ** 2))
    terms.append(-pi2 / 3.0 * (1.0 - 1.0 / (p * p)))
    return math.fsum(terms)


def tau_residual(p: int, kappa: float) -> float:
    """1 - phi(p/(p+1)) = -P_tau(p)."""
    _check_odd_prime(p)
    return phi_complement_ratio(p, p + 1, kappa)


def sigma_residual(p: int, kappa: float) -> float:
    """p (1 - phi(p/(p+1))) = -P_sigma(p)."""
    _check_odd_prime(p)
    return p * phi_complement_ratio(p, p + 1, kappa)


@dataclass(frozen=True)
class ResonanceExclusion:
    """Excluded set E near integers and near multiples of small i on [a, b]."""

    a: float
    b: float
    eta: float
    I0: int

    def __post_init__(self):
        if not 0 < self.a <= self.b:
            raise ValueError("need 0 < a <= b")
        if not 0 < self.eta < 1:
            raise ValueError("eta must lie in (0, 1)")
        if self.I0 < 2:
            raise ValueError("I0 must be >= 2")

    @property
    def delta0(self) -> float:
        return self.eta / (8.0 * (self.b - self.a + 1.0))

    @property
    def delta_i(self) -> float:
        return self.eta / (8.0 * self.I0 * ((self.b - self.a) + self.I0))

    def excludes(self, x: float) -> bool:
        if abs(x - round(x)) < self.delta0:
            return True
        for i in range(2, self.I0 + 1):
            u = x / i
            if abs(u - round(u)) < self.delta_i:
                return True
        return False

    def intervals(self) -> list[tuple[float, float]]:
        """Merged open intervals of E clipped to [a, b]."""
        raw = []
        for k in range(math.floor(self.a) - 1, math.ceil(self.b) + 2):
            raw.append((k - self.delta0, k + self.delta0))
        for i in range(2, self.I0 + 1):
            r = i * self.delta_i
            for m in range(math.floor(self.a / i) - 1, math.ceil(self.b / i) + 2):
                raw.append((i * m - r, i * m + r))
        clipped = sorted(
            (max(lo, self.a), min(hi, self.b)) for lo, hi in raw if hi > self.a and lo < self.b
        )
        merged: list[tuple[float, float]] = []
        for lo, hi in clipped:
            if merged and lo <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
            else:
                merged.append((lo, hi))
        return merged

    def measure(self) -> float:
        return sum(hi - lo for lo, hi in self.intervals())

    def lower_bound(self, kappa: float) -> float:
        """Guaranteed floor for the partial sigma sum on [a, b] outside E."""
        s = math.fsum(phi_ratio(i, self.a + 1, kappa) / i for i in range(2, self.I0 + 1))
        return (2.0 * self.delta0 / math.pi) ** 2 * s


def sigma_partial_sum(
    x: float, kappa: float, I0: int, guard: ResonanceGuard = DEFAULT_GUARD
) -> float:
    """sum_{i=2}^{I0} phi(i/(x+1)) F(x,i)/i."""
    return math.fsum(
        phi_ratio(i, x + 1, kappa) * fejer_sine_quotient(x, i, guard) / i for i in range(2, I0 + 1)
    )


def quadratic_coefficient_tau(p: int, kappa: float, half_width: float | None = None) -> float:
    """Least-squares s^2 coefficient of P_tau on a symmetric 9-point grid around p.

    The cutoff weight of index p+1 switches over |s| ~ (p+1)/(2 kappa), so the
    default window stays well inside that scale.
    """
    if half_width is None:
        half_width = min(1e-2, (p + 1) / (20.0 * kappa))
    return quadratic_coefficient_fit(
        lambda x: p_tau_centered(p, x - p, kappa).value, float(p), half_width
    )
