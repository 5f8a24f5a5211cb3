"""Two prime-counting sums built on the integer values of P_tau.

Baseline: sum_{n<=x} C/(|P_tau(n)| + C) with a fixed threshold C. Each
composite leaks about C/(1+C), so the error drifts linearly.

H-variant: kappa(n) = alpha (n+1) and threshold eps(n) = (n+1)^-gamma.
Composite leakage is then summable and the total error stays bounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import oracle
from .smooth import p_tau_integer

ZETA_TAIL_TERMS = 10**6


@dataclass(frozen=True)
class BaselineParams:
    kappa: float
    C: float = 0.001

    def __post_init__(self):
        if not self.C > 0:
            raise ValueError("C must be > 0")
        if not self.kappa > 0:
            raise ValueError("kappa must be > 0")


@dataclass(frozen=True)
class HVariantParams:
    alpha: float
    gamma: float
    lam: float = 1.0
    X: float | None = None
    enforce_admissible: bool = False

    def __post_init__(self):
        if not self.alpha > 0.5 * math.log(2):
            raise ValueError("alpha must exceed log(2)/2 so the composite gap is positive")
        if not self.gamma > 1:
            raise ValueError("gamma must be > 1")
        if not self.lam >= 1:
            raise ValueError("lambda must be >= 1")
        if self.enforce_admissible:
            if self.X is None:
                raise ValueError("admissibility needs the range X")
            top = gamma_admissible_max(self.alpha, self.X, self.lam)
            if self.gamma > top:
                raise ValueError(f"gamma {self.gamma} exceeds admissible {top:.4g}")


def _check_x(x: float) -> int:
    if not x >= 2:
        raise ValueError("x must be >= 2")
    return math.floor(x)


def pi_baseline(x: float, params: BaselineParams) -> float:
    top = _check_x(x)
    c = params.C
    terms = []
    for n in range(2, top + 1):
        g = abs(p_tau_integer(n, params.kappa))
        terms.append(c / (g + c))
    return math.fsum(terms)


def b_alpha(alpha: float) -> float:
    """Odd-prime residual 1/(e^{2 alpha} + 1), without overflow."""
    if not alpha > 0:
        raise ValueError("alpha must be > 0")
    return math.exp(-2 * alpha) / (1.0 + math.exp(-2 * alpha))


def composite_gap(alpha: float) -> float:
    if not alpha > 0:
        raise ValueError("alpha must be > 0")
    return 1.0 - 2.0 * math.exp(-2.0 * alpha)


def gamma_admissible_max(alpha: float, X: float, lam: float = 1.0) -> float:
    """Largest gamma with eps(p) >= lam * B(alpha) for all p <= X."""
    if not alpha > 0 or not X >= 2 or not lam >= 1:
        raise ValueError("need alpha > 0, X >= 2, lambda >= 1")
    log_e2a_plus_1 = 2 * alpha + math.log1p(math.exp(-2 * alpha))
    return (log_e2a_plus_1 - math.log(lam)) / math.log(X + 1)


def h_term(n: int, params: HVariantParams, exact_prime_residual: bool = False) -> float:
    """a_n = eps/(g + eps) = 1/(1 + g (n+1)^gamma), ratio formed in log space."""
    g = abs(p_tau_integer(n, params.alpha * (n + 1), exact_residual=exact_prime_residual))
    if g == 0.0:
        return 1.0
    log_ratio = math.log(g) + params.gamma * math.log(n + 1)
    if log_ratio > 700:
        return math.exp(-log_ratio)
    return 1.0 / (1.0 + math.exp(log_ratio))


def pi_h(x: float, params: HVariantParams, exact_prime_residual: bool = False) -> float:
    """H-variant counting sum.

    By default the inner values follow the literal divisor sum
    sum phi - 1. In double precision that sum rounds the prime residual
    B(alpha) to zero once B(alpha) is below half an ulp of 1 (alpha >~ 18.4),
    so every prime then contributes exactly 1. ``exact_prime_residual``
    keeps the residual and shows the true behaviour of the sum.
    """
    top = _check_x(x)
    return math.fsum(h_term(n, params, exact_prime_residual) for n in range(2, top + 1))


def zeta_tail_bound(gamma: float, start: int = 4, tol: float = 1e-15) -> float:
    """Upper bound for sum_{n >= start} (n+1)^-gamma.

    Direct summation until the integral tail N^(1-gamma)/(gamma-1) drops
    below tol (or a term cap is hit), then that integral is added.
    """
    if not gamma > 1:
        raise ValueError("gamma must be > 1")
    terms = []
    n = start
    while True:
        # the unsummed part is sum_{m >= n+1} m^-gamma <= integral from n to infinity
        tail = n ** (1 - gamma) / (gamma - 1)
        if tail <= tol or n - start >= ZETA_TAIL_TERMS:
            break
        terms.append((n + 1) ** -gamma)
        n += 1
    terms.append(tail)
    return math.fsum(terms)


@dataclass(frozen=True)
class ErrorDecomposition:
    E_c: float
    E_p: float
    bound_Ec: float


def error_decomposition(
    x: float, params: HVariantParams, exact_prime_residual: bool = False
) -> ErrorDecomposition:
    top = _check_x(x)
    flags = oracle.prime_sieve(top)
    b = b_alpha(params.alpha)
    comp, prim = [], []
    for n in range(2, top + 1):
        if flags[n]:
            eps = (n + 1) ** -params.gamma
            prim.append(b / (b + eps))
        else:
            comp.append(h_term(n, params, exact_prime_residual))
    c_alpha = composite_gap(params.alpha)
    bound = zeta_tail_bound(params.gamma) / c_alpha if c_alpha > 0 else math.inf
    return ErrorDecomposition(math.fsum(comp), math.fsum(prim), bound)
