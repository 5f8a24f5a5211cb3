"""Desk-scale acceptance checks, shared by the test suite and ``selftest``.

Each check returns a CriterionResult; nothing here is loosened to make a
check pass. Where a check fails, ``detail`` says exactly where.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from typing import Callable

import mpmath

from . import oracle
from .bench import fit_exponents, run_benchmark
from .counting import HVariantParams, composite_gap, pi_h
from .fejer import EvalStrategy, fejer, fejer_rpf
from .indicator import (
    composite_bounds,
    indicator_P,
    indicator_P_integer,
    is_odd_prime_via_P,
    jump_measured,
)
from .smooth import (
    p_sigma,
    p_sigma_integer,
    p_tau,
    p_tau_integer,
    sigma_residual,
)
from .zeros import companion_zeros_sigma, companion_zeros_tau, decay_fit


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _timed(number: int, name: str, fn: Callable[[], tuple[bool, str]], limit=None):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    if limit is not None and dt >= limit:
        ok = False
        detail += f"; runtime {dt:.1f}s over the {limit:.0f}s limit"
    return CriterionResult(number, name, ok, detail, dt)


def _divisor_filter():
    worst = 0.0
    for n in range(2, 10**4 + 1):
        for i in range(2, 201):
            want = i * i if n % i == 0 else 0
            err = abs(fejer(n, i, EvalStrategy.AUTO) - want) / (i * i)
            if err > worst:
                worst = err
    return worst <= 1e-9, f"max |F(n,i) - i^2[i|n]|/i^2 = {worst:.2e}"


def criterion_1():
    return _timed(1, "divisor-filter exactness", _divisor_filter, limit=30)


def _prime_zero():
    bad = [
        n
        for n in range(2, 10**5 + 1)
        if is_odd_prime_via_P(n) != (n % 2 == 1 and oracle.is_prime(n))
    ]
    return not bad, f"{len(bad)} misclassifications for n <= 1e5"


def criterion_2():
    return _timed(2, "prime-zero law", _prime_zero)


def _composite_bounds():
    below, above, eq = [], [], set()
    for n in range(4, 10**5 + 1):
        if oracle.is_prime(n):
            continue
        value = indicator_P_integer(n)
        lower, _ = composite_bounds(n)
        if value < lower:
            below.append(n)
        if value == lower:
            eq.add(n)
        if value > math.sqrt(n) / 3 + 5:
            above.append(n)
    expected = {4, 8} | {2 * p for p in oracle.primes_up_to(10**5 // 2) if p > 2}
    extra = sorted(eq - expected)
    missing = sorted(expected - eq)
    ok = not below and not above and not extra and not missing
    detail = (
        f"lower violations {len(below)}, upper violations {len(above)}, "
        f"equality set minus {{4,8}}u{{2p}} = {extra[:5]}, "
        f"{{4,8}}u{{2p}} minus equality set = {missing[:5]}"
    )
    return ok, detail


def criterion_3():
    return _timed(3, "composite bounds", _composite_bounds)


def _jumps():
    worst = max(jump_measured(m, 1e-4).rel_error for m in range(1, 21))
    m1 = jump_measured(1, 1e-4)
    ok = worst <= 0.01 and abs(m1.measured - 2 * math.pi**2) <= 0.01 * 2 * math.pi**2
    return ok, f"max rel error {worst:.2e}; m=1 measured {m1.measured:.4f}"


def criterion_4():
    return _timed(4, "second-derivative jump", _jumps, limit=10)


def _cosine_poly_hp(x: float, i: int) -> float:
    """Cosine polynomial at 30 significant digits, independent of fejer.py."""
    with mpmath.workdps(30):
        xm = mpmath.mpf(x)
        w = 2 * mpmath.pi * xm / i
        total = mpmath.mpf(i)
        for k in range(1, i):
            total += 2 * (i - k) * mpmath.cos(k * w)
        return float(total)


def _rpf_certification(samples: int = 10**4, seed: int = 20240601):
    rng = random.Random(seed)
    misses, rel_misses, rel_checked = 0, 0, 0
    for _ in range(samples):
        x = rng.uniform(1.0, 500.0)
        i = rng.randint(2, 64)
        K = rng.randint(0, 64)
        cv = fejer_rpf(x, i, K)
        exact = _cosine_poly_hp(x, i)
        err = abs(cv.value - exact)
        if err > cv.abs_error_bound:
            misses += 1
        if abs(x - round(x)) > 0.05:
            rel_checked += 1
            if err / exact > 1.0 / (2 * (K + 0.5)):
                rel_misses += 1
    ok = misses == 0 and rel_misses == 0
    return ok, (
        f"bound violated {misses}/{samples}; relative bound violated "
        f"{rel_misses}/{rel_checked}"
    )


def criterion_5():
    return _timed(5, "RPF certification", _rpf_certification)


def _smooth_limits():
    worst_t, worst_s = 0.0, 0.0
    for n in range(2, 10**4 + 1):
        kappa = 50 * (n + 1)
        divs = oracle.divisors(n)
        et = abs(p_tau_integer(n, kappa) - (len(divs) - 2))
        es = abs(p_sigma_integer(n, kappa) - (sum(divs) - n - 1)) / sum(divs)
        worst_t, worst_s = max(worst_t, et), max(worst_s, es)
    ok = worst_t <= 1e-12 and worst_s <= 1e-9
    return ok, f"max tau error {worst_t:.2e}; max sigma error/sigma(n) {worst_s:.2e}"


def criterion_6():
    return _timed(6, "smooth integer limits", _smooth_limits)


def _series_consistency():
    eps = 1e-12
    worst = 0.0
    for kappa in (10.0, 100.0, 1000.0):
        for n in range(2, 501):
            worst = max(
                worst,
                abs(p_tau(n, kappa, eps).value - p_tau_integer(n, kappa)),
                abs(p_sigma(n, kappa, eps).value - p_sigma_integer(n, kappa)),
            )
    return worst <= eps + 1e-9, f"max |series - closed form| = {worst:.2e}"


def criterion_7():
    return _timed(7, "series/closed-form consistency", _series_consistency)


KAPPAS_8 = (20.0, 40.0, 80.0, 160.0)


def _companion_scaling():
    ok = True
    notes = []
    for p in (3, 5, 7):
        pairs = [companion_zeros_tau(p, k) for k in KAPPAS_8]
        for side in ("left", "right"):
            pts = [(z.kappa, getattr(z, side + "_gap")) for z in pairs]
            present = [(k, g) for k, g in pts if g is not None]
            absent = [k for k, g in pts if g is None]
            if absent:
                notes.append(f"tau p={p} {side} zero absent at kappa={absent}")
            if len(present) < 3:
                ok = False
                continue
            slope = decay_fit(present).slope
            target = -1.0 / (p + 1)
            good = abs(slope - target) <= 0.2 * abs(target)
            ok &= good
            notes.append(f"tau p={p} {side} slope {slope:.4f} vs {target:.4f}")
        sig = [companion_zeros_sigma(p, k) for k in KAPPAS_8]
        present = [(z.kappa, z.left_gap) for z in sig if z.left_gap is not None]
        if len(present) < 3:
            ok = False
            notes.append(f"sigma p={p} left zero found for {len(present)} kappas")
        else:
            slope = decay_fit(present).slope
            target = -2.0 / (p + 1)
            good = abs(slope - target) <= 0.2 * abs(target)
            ok &= good
            notes.append(f"sigma p={p} left slope {slope:.4f} vs {target:.4f}")
        for k in sorted({30.0, 60.0, 120.0} | {k for k in KAPPAS_8 if k >= 30}):
            z = companion_zeros_sigma(p, k)
            d = sigma_residual(p, k)
            inside = z.left_gap is not None and d / 2 <= z.left_gap <= 2 * d
            if not inside:
                ok = False
                notes.append(f"sigma p={p} kappa={k} left gap outside [D/2, 2D]")
    return ok, "; ".join(notes)


def criterion_8():
    return _timed(8, "companion-zero scaling", _companion_scaling)


def _h_variant():
    small = pi_h(50, HVariantParams(18.5, 5.0))
    large = pi_h(1e4, HVariantParams(19.0, 7.0))
    pi_large = oracle.prime_pi(1e4)
    e1, e2 = abs(small - 15), abs(large - pi_large)
    return e1 <= 1e-3 and e2 <= 1e-4, f"|pi_H(50)-15| = {e1:.2e}; |pi_H(1e4)-pi(1e4)| = {e2:.2e}"


def criterion_9():
    return _timed(9, "H-variant accuracy", _h_variant, limit=60)


def _gap_and_residuals():
    flags = oracle.prime_sieve(10**4)
    gap_bad, res_worst = 0, 0.0
    for alpha in (1.0, 5.0, 18.5):
        c = composite_gap(alpha)
        want = (1 - math.tanh(alpha)) / 2
        for n in range(4, 10**4 + 1):
            v = p_tau_integer(n, alpha * (n + 1))
            if flags[n]:
                if n > 2:
                    res_worst = max(res_worst, abs(abs(v) - want))
            elif v < c:
                gap_bad += 1
    ok = gap_bad == 0 and res_worst <= 1e-15
    return ok, f"composite gap violations {gap_bad}; max prime residual error {res_worst:.2e}"


def criterion_10():
    return _timed(10, "composite gap and residuals", _gap_and_residuals)


def _complexity():
    fits = fit_exponents(run_benchmark(reps=3))
    a = fits[EvalStrategy.COSINE_POLY].exponent
    b = fits[EvalStrategy.SINE_QUOTIENT].exponent
    c = fits[EvalStrategy.RPF].exponent
    ok = 0.85 <= a <= 1.15 and 0.35 <= b <= 0.65 and 0.35 <= c <= 0.65
    return ok, f"exponents A {a:.3f}, B {b:.3f}, C {c:.3f}"


def criterion_11():
    return _timed(11, "complexity split", _complexity)


def _c1_check(h: float = 1e-5):
    worst = 0.0
    for m in range(1, 31):
        x0 = float(m * m)

        def f(x):
            return indicator_P(x).value

        right = (-3 * f(x0) + 4 * f(x0 + h) - f(x0 + 2 * h)) / (2 * h)
        left = (3 * f(x0) - 4 * f(x0 - h) + f(x0 - 2 * h)) / (2 * h)
        worst = max(worst, abs(right - left))
    return worst <= 1e-4, f"max |P'(m^2+) - P'(m^2-)| = {worst:.2e}"


def criterion_12():
    return _timed(12, "C1 at squares", _c1_check)


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
    12: criterion_12,
}


def run_all(select=None) -> list[CriterionResult]:
    numbers = sorted(CRITERIA) if select is None else sorted(select)
    return [CRITERIA[k]() for k in numbers]
