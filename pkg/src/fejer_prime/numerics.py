"""Small floating-point helpers shared by the evaluation modules."""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

# Taylor coefficients of sin(z)/z - 1 in powers of z**2, k = 1..8.
_SINC_COEFFS = tuple((-1) ** k / math.factorial(2 * k + 1) for k in range(1, 9))


def round_half_up(u: float) -> int:
    """floor(u + 1/2): ties go to the larger integer."""
    return math.floor(u + 0.5)


def sinpi(x: float) -> float:
    """sin(pi*x) with exact argument reduction.

    Exact zero at every integer and full relative accuracy next to them,
    which plain ``math.sin(math.pi * x)`` loses once |x| grows.
    """
    r = math.remainder(x, 2.0)  # exact, r in [-1, 1]
    if r > 0.5:
        r = 1.0 - r
    elif r < -0.5:
        r = -1.0 - r
    return math.sin(math.pi * r)


def sinc_minus_one(u: float) -> float:
    """sin(pi*u)/(pi*u) - 1 without cancellation for small u."""
    z = math.pi * u
    if abs(z) < 0.5:
        z2 = z * z
        acc = 0.0
        for c in reversed(_SINC_COEFFS):
            acc = acc * z2 + c
        return acc * z2
    return math.sin(z) / z - 1.0


def second_derivative_5pt(f: Callable[[float], float], x: float, h: float) -> float:
    """Fourth-order central stencil for f''(x)."""
    return (
        -f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)
    ) / (12 * h * h)


def first_derivative_central(f: Callable[[float], float], x: float, h: float) -> float:
    return (f(x + h) - f(x - h)) / (2 * h)


def quadratic_coefficient_fit(
    f: Callable[[float], float], center: float, half_width: float, n_points: int = 9
) -> float:
    """Least-squares b in f(center + s) ~ a + b*s**2 on a symmetric grid."""
    s = np.linspace(-half_width, half_width, n_points)
    y = np.array([f(center + si) for si in s])
    design = np.column_stack([np.ones_like(s), s * s])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return float(coef[1])


def linear_fit(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float, float]:
    """Least-squares line through (xs, ys): (slope, intercept, rms residual)."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return float(slope), float(intercept), float(np.sqrt(np.mean(resid * resid)))
