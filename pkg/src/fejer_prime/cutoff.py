"""Smooth cutoff phi_kappa(u) = (1 - tanh(kappa (u - 1)))/2 in logistic form."""

from __future__ import annotations

import math

EXP_CLAMP = 700.0


def _check_kappa(kappa: float) -> None:
    if not kappa > 0:
        raise ValueError(f"kappa must be > 0, got {kappa}")


def phi_at_exponent(z: float) -> float:
    """1/(1 + e^z); exact 0 or 1 beyond the clamp."""
    if z > EXP_CLAMP:
        return 0.0
    if z < -EXP_CLAMP:
        return 1.0
    return 1.0 / (1.0 + math.exp(z))


def phi_complement_at_exponent(z: float) -> float:
    """e^z/(1 + e^z) = 1/(1 + e^-z), no cancellation."""
    if z > EXP_CLAMP:
        return 1.0
    if z < -EXP_CLAMP:
        return 0.0
    return 1.0 / (1.0 + math.exp(-z))


def cutoff_exponent(u: float, kappa: float) -> float:
    return 2.0 * kappa * (u - 1.0)


def phi(u: float, kappa: float) -> float:
    _check_kappa(kappa)
    return phi_at_exponent(cutoff_exponent(u, kappa))


def phi_complement(u: float, kappa: float) -> float:
    """1 - phi(u, kappa)."""
    _check_kappa(kappa)
    return phi_complement_at_exponent(cutoff_exponent(u, kappa))


def phi_ratio(num: float, den: float, kappa: float) -> float:
    """phi(num/den) with the exponent formed as 2 kappa (num - den)/den.

    Avoids the cancellation in num/den - 1 when the ratio is close to 1.
    """
    _check_kappa(kappa)
    return phi_at_exponent(2.0 * kappa * (num - den) / den)


def phi_complement_ratio(num: float, den: float, kappa: float) -> float:
    _check_kappa(kappa)
    return phi_complement_at_exponent(2.0 * kappa * (num - den) / den)
