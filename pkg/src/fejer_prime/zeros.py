"""Companion zeros of the smooth analogues next to odd primes.

P_tau(p) and P_sigma(p) are slightly negative for finite kappa while the
surrounding values are positive, so zeros appear beside each odd prime.
For P_tau the two gaps shrink like exp(-kappa/(p+1)); for P_sigma only the
left gap does, at roughly twice that rate.

All searches work in the offset t = x - p, so gaps well below one ulp of p
are still resolved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .numerics import linear_fit
from .smooth import (
    b_infinity_tau,
    p_sigma_centered,
    p_tau_centered,
    sigma_residual,
    tau_residual,
)

Bracket = tuple[float, float]


def _sign(v: float) -> int:
    return (v > 0) - (v < 0)


def sign_changes_on_grid(f: Callable[[float], float], grid: Sequence[float]) -> list[Bracket]:
    """Brackets between consecutive grid points where f changes sign.

    A sample where f is exactly zero is reported as a degenerate bracket.
    """
    out: list[Bracket] = []
    prev_x: Optional[float] = None
    prev_s = 0
    for x in grid:
        s = _sign(f(x))
        if s == 0:
            out.append((x, x))
            prev_x, prev_s = None, 0
            continue
        if prev_x is not None and s != prev_s:
            out.append((prev_x, x))
        prev_x, prev_s = x, s
    return out


def find_sign_changes(
    f: Callable[[float], float], a: float, b: float, step: float
) -> list[Bracket]:
    """Sign-change brackets of f sampled at a + k*step inside [a, b]."""
    if not a < b:
        raise ValueError("need a < b")
    if not step > 0:
        raise ValueError("step must be > 0")
    count = math.floor((b - a) / step + 1e-9)
    return sign_changes_on_grid(f, [a + k * step for k in range(count + 1)])


def bisect(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-13,
    rtol: float = 0.0,
    max_iter: int = 2000,
) -> float:
    """Root of f in [a, b] by bisection.

    Stops once the bracket is shorter than max(tol, rtol * min(|a|, |b|)).
    With rtol > 0 and a bracket spanning more than a factor 2 on one side
    of zero, the split point is the geometric mean, so tiny roots are found
    in O(log log) steps instead of walking down from the bracket scale.
    """
    if a > b:
        a, b = b, a
    fa, fb = f(a), f(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if _sign(fa) == _sign(fb):
        raise ValueError("f does not change sign on the bracket")
    for _ in range(max_iter):
        width = b - a
        scale = min(abs(a), abs(b))
        if width <= max(tol, rtol * scale):
            break
        if rtol > 0 and a * b > 0 and max(abs(a), abs(b)) > 2 * scale:
            mid = math.copysign(math.sqrt(abs(a)) * math.sqrt(abs(b)), a)
        else:
            mid = a + 0.5 * width
        if mid <= a or mid >= b:
            break
        fm = f(mid)
        if fm == 0:
            return mid
        if _sign(fm) == _sign(fa):
            a, fa = mid, fm
        else:
            b, fb = mid, fm
    return a + 0.5 * (b - a)


def log_offset_grid(lo: float, hi: float, per_decade: int = 40) -> list[float]:
    """Increasing offsets from lo to hi, geometric spacing."""
    if not 0 < lo < hi:
        raise ValueError("need 0 < lo < hi")
    n = max(2, math.ceil(per_decade * math.log10(hi / lo)) + 1)
    ratio = (hi / lo) ** (1.0 / (n - 1))
    return [lo * ratio**k for k in range(n - 1)] + [hi]


@dataclass(frozen=True)
class ZeroPair:
    p: int
    kappa: float
    left_gap: Optional[float]
    right_gap: Optional[float]
    left_count: int = 0
    right_count: int = 0

    @property
    def left(self) -> Optional[float]:
        return None if self.left_gap is None else self.p - self.left_gap

    @property
    def right(self) -> Optional[float]:
        return None if self.right_gap is None else self.p + self.right_gap


def _side_roots(g: Callable[[float], float], grid: Sequence[float]) -> list[float]:
    """Roots of g on a positive offset grid, nearest first."""
    roots = []
    for lo, hi in sign_changes_on_grid(g, grid):
        if lo == hi:
            roots.append(lo)
        else:
            roots.append(bisect(g, lo, hi, tol=0.0, rtol=1e-13))
    return roots


def _flank_grid(scale: float, reach: float) -> list[float]:
    lo = max(scale * 1e-3, 1e-300)
    near = log_offset_grid(lo, min(1e-2, reach)) if lo < min(1e-2, reach) else []
    far = [k * 1e-3 for k in range(11, math.floor(reach * 1000) + 1)]
    return [0.0] + near + far


def predicted_tau_gap(p: int, kappa: float) -> float:
    return math.sqrt(tau_residual(p, kappa) / b_infinity_tau(p))


def _check_kappa(kappa: float, min_kappa: float) -> None:
    if not kappa > 0 or kappa < min_kappa:
        raise ValueError(f"kappa must be >= {min_kappa}")


def companion_zeros_tau(
    p: int, kappa: float, reach: float = 0.5, min_kappa: float = 10.0
) -> ZeroPair:
    """Zeros of P_tau in (p - reach, p + reach), nearest on each side reported.

    The pair is only expected once kappa is large; pass a smaller
    ``min_kappa`` to survey the small-kappa regime anyway.
    """
    _check_kappa(kappa, min_kappa)
    grid = _flank_grid(predicted_tau_gap(p, kappa), min(reach, 0.5))

    def right(t):
        return p_tau_centered(p, t, kappa).value

    def left(t):
        return p_tau_centered(p, -t, kappa).value

    r, lft = _side_roots(right, grid), _side_roots(left, grid)
    return ZeroPair(
        p,
        kappa,
        lft[0] if lft else None,
        r[0] if r else None,
        len(lft),
        len(r),
    )


def companion_zeros_sigma(p: int, kappa: float, min_kappa: float = 10.0) -> ZeroPair:
    """Left zero searched in (p - 4 Delta, p), right zero in (p, p + 1)."""
    _check_kappa(kappa, min_kappa)
    delta = sigma_residual(p, kappa)

    def g(t):
        return p_sigma_centered(p, t, kappa).value

    left_gap = None
    left_count = 0
    reach = min(4.0 * delta, 0.99)
    if reach > 0:
        if _sign(g(-reach)) * _sign(g(0.0)) < 0:
            left_gap = -bisect(g, -reach, 0.0, tol=0.0, rtol=1e-13)
            left_count = 1

    right_roots = _side_roots(g, [k * 1e-3 for k in range(0, 1000)])
    return ZeroPair(
        p,
        kappa,
        left_gap,
        right_roots[0] if right_roots else None,
        left_count,
        len(right_roots),
    )


@dataclass(frozen=True)
class DecayFit:
    slope: float
    intercept: float
    residual: float


def decay_fit(points: Sequence[tuple[float, float]]) -> DecayFit:
    """Least-squares line through (kappa, log gap)."""
    if len(points) < 3:
        raise ValueError("need at least 3 points")
    if any(not gap > 0 for _, gap in points):
        raise ValueError("gaps must be positive")
    slope, intercept, resid = linear_fit(
        [k for k, _ in points], [math.log(gap) for _, gap in points]
    )
    return DecayFit(slope, intercept, resid)
