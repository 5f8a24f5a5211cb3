import math
import random

import mpmath
import pytest

from fejer_prime import oracle
from fejer_prime.cutoff import phi, phi_ratio
from fejer_prime.fejer import fejer_sine_quotient
from fejer_prime.smooth import (
    ResonanceExclusion,
    SeriesKind,
    TruncationError,
    b_infinity_tau,
    p_sigma,
    p_sigma_centered,
    p_sigma_integer,
    p_tau,
    p_tau_centered,
    p_tau_integer,
    plan_truncation,
    quadratic_coefficient_tau,
    sigma_partial_sum,
    sigma_residual,
    tail_bound,
    tau_residual,
)

PI2 = math.pi**2


class TestPlan:
    def test_examples(self):
        assert plan_truncation(SeriesKind.TAU, (10, 10), 100.0, 1e-12).M == 12
        assert plan_truncation(SeriesKind.SIGMA, (10, 10), 100.0, 1e-12).M == 12
        assert plan_truncation(SeriesKind.TAU, (3, 10), 1e9, 0.5).M == 11

    def test_unshifted_majorant_is_too_small(self):
        # r^(M+1)/(1-r) drops the e^{2 kappa} factor of the logistic bound
        x, kappa, M = 10.9, 100.0, 12
        c = 2 * kappa / (x + 1)
        unshifted = math.exp(-c * (M + 1)) / -math.expm1(-c)
        true_tail = math.fsum(
            phi_ratio(i, x + 1, kappa) * fejer_sine_quotient(x, i) / i**2 for i in range(M + 1, 4 * M)
        )
        assert true_tail > 1e6 * unshifted
        assert true_tail <= tail_bound(SeriesKind.TAU, M, kappa, x)

    def test_bound_meets_eps(self):
        for kind in SeriesKind:
            for kappa in (0.5, 3.0, 40.0):
                plan = plan_truncation(kind, (1.0, 30.0), kappa, 1e-10)
                assert plan.tail_bound <= 1e-10

    def test_sigma_plan_is_minimal(self):
        for kappa in (1.0, 7.0):
            plan = plan_truncation(SeriesKind.SIGMA, (5.0, 5.0), kappa, 1e-12)
            looser = plan_truncation(SeriesKind.SIGMA, (5.0, 5.0), kappa, 1e-12)
            assert plan.M == looser.M
            assert tail_bound(SeriesKind.SIGMA, plan.M - 1, kappa, 5.0) > 1e-12

    def test_cap(self):
        with pytest.raises(TruncationError):
            plan_truncation(SeriesKind.SIGMA, (1e5, 1e5), 1e-3, 1e-12)

    @pytest.mark.parametrize("bad", [dict(eps=0.0), dict(eps=1.5), dict(kappa=-1.0)])
    def test_validation(self, bad):
        kw = dict(kind=SeriesKind.TAU, interval=(1.0, 2.0), kappa=1.0, eps=1e-12)
        kw.update(bad)
        with pytest.raises(ValueError):
            plan_truncation(**kw)

    def test_tail_certified_by_extension(self):
        rng = random.Random(3)
        for _ in range(40):
            x = rng.uniform(1.5, 60.0)
            kappa = rng.choice([2.0, 10.0, 50.0])
            for kind, power in ((SeriesKind.TAU, 2), (SeriesKind.SIGMA, 1)):
                plan = plan_truncation(kind, (x, x), kappa, 1e-12)
                tail = math.fsum(
                    phi_ratio(i, x + 1, kappa) * fejer_sine_quotient(x, i) / i**power
                    for i in range(plan.M + 1, 4 * plan.M + 1)
                )
                assert 0 <= tail <= plan.eps


class TestSeriesValues:
    def test_examples(self):
        assert p_tau(12, 650.0).value == pytest.approx(4, abs=1e-6)
        assert p_tau(4, 1e4).value == pytest.approx(1, abs=1e-9)
        assert p_sigma(6, 1e4).value == pytest.approx(5, abs=1e-6)
        assert p_sigma(4, 1e4).value == pytest.approx(2, abs=1e-6)

    def test_frozen_non_integer(self):
        # 40-digit sums over i < 60
        assert p_tau(7.3, 50.0).value == pytest.approx(0.3809321743056048718, abs=1e-11)
        assert p_sigma(7.3, 50.0).value == pytest.approx(0.61850369240036522521, abs=1e-11)

    def test_negative_at_odd_primes(self):
        for p in (3, 5, 7, 11, 13):
            assert p_sigma(p, 60.0).value < 0
            assert p_tau(p, 60.0).value < 0

    def test_rejects_nonpositive_x(self):
        with pytest.raises(ValueError):
            p_tau(0.0, 10.0)

    def test_matches_closed_form(self):
        for kappa in (10.0, 100.0, 1000.0):
            for n in range(2, 201):
                assert abs(p_tau(n, kappa).value - p_tau_integer(n, kappa)) <= 1e-12 + 1e-9
                assert abs(p_sigma(n, kappa).value - p_sigma_integer(n, kappa)) <= 1e-12 + 1e-9


class TestIntegerForms:
    def test_frozen(self):
        assert p_tau_integer(12, 10.0) == pytest.approx(3.8232187076253424974, rel=1e-14)
        assert p_sigma_integer(12, 10.0) == pytest.approx(12.878760790213303022, rel=1e-14)
        assert p_tau_integer(12, 1e6) == pytest.approx(4, abs=1e-12)

    def test_prime_residuals(self):
        for kappa in (1.0, 6.0, 30.0):
            assert p_tau_integer(5, kappa) == pytest.approx(-(1 - math.tanh(kappa / 6)) / 2, abs=1e-15)
        for p in (3, 7, 101):
            for kappa in (2.0, 20.0):
                assert p_sigma_integer(p, kappa) == pytest.approx(p * (phi(p / (p + 1), kappa) - 1), rel=1e-12)

    def test_prime_residual_single_divisor(self):
        with mpmath.workdps(40):
            want = float(-(1 - mpmath.tanh(3)) / 2)
        for p in oracle.primes_up_to(2000)[1:]:
            kappa = 3.0 * (p + 1)
            assert abs(p_tau_integer(p, kappa) - want) <= 1e-15

    def test_steep_limits(self):
        for n in range(2, 3001):
            divs = oracle.divisors(n)
            kappa = 50.0 * (n + 1)
            t, s = len(divs), sum(divs)
            assert abs(p_tau_integer(n, kappa) - (t - 2)) <= (t - 1) * math.exp(-100)
            assert abs(p_sigma_integer(n, kappa) - (s - n - 1)) <= s * math.exp(-100)

    def test_exact_residual_option(self):
        # alpha = 19: the literal sum rounds the prime residual to 0
        p = 9973
        kappa = 19.0 * (p + 1)
        assert p_tau_integer(p, kappa) == 0.0
        exact = p_tau_integer(p, kappa, exact_residual=True)
        assert exact == pytest.approx(-(1 - math.tanh(19.0)) / 2, rel=1e-12)
        assert p_sigma_integer(p, kappa, exact_residual=True) == pytest.approx(p * exact, rel=1e-12)
        assert p_tau_integer(12, 10.0, exact_residual=True) == pytest.approx(p_tau_integer(12, 10.0), abs=1e-14)


class TestCentered:
    def test_agrees_with_plain(self):
        for n, t, kappa in [(12, 0.3, 10.0), (7, -0.25, 40.0), (30, 0.45, 5.0)]:
            a = p_tau_centered(n, t, kappa).value
            assert a == pytest.approx(p_tau(n + t, kappa).value, abs=1e-11)
            b = p_sigma_centered(n, t, kappa).value
            assert b == pytest.approx(p_sigma(n + t, kappa).value, abs=1e-10)

    def test_at_zero_offset(self):
        assert p_tau_centered(3, 0.0, 20.0).value == pytest.approx(-tau_residual(3, 20.0), rel=1e-12)
        assert p_sigma_centered(3, 0.0, 20.0).value == pytest.approx(-sigma_residual(3, 20.0), rel=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            p_tau_centered(3, 1.0, 20.0)
        with pytest.raises(ValueError):
            p_tau_centered(0, 0.1, 20.0)


class TestResiduals:
    def test_sigma_residual_frozen(self):
        d = sigma_residual(3, 20.0)
        assert d == pytest.approx(1.3619360610730318351e-4, rel=1e-12)
        assert d == pytest.approx(3 * (1 - math.tanh(5)) / 2, rel=1e-9)
        assert d == pytest.approx(-p_sigma_integer(3, 20.0), rel=1e-9)

    def test_vanish(self):
        assert sigma_residual(3, 1e4) == 0.0
        assert tau_residual(7, 1e4) == 0.0

    def test_rejects_non_odd_prime(self):
        for n in (2, 9):
            with pytest.raises(ValueError):
                sigma_residual(n, 10.0)


class TestSigmaSlope:
    @pytest.mark.parametrize("p", [3, 5, 7, 11])
    def test_slope_at_primes(self, p):
        h = 1e-6
        kappa = 1e3
        f = lambda t: p_sigma_centered(p, t, kappa).value  # noqa: E731
        slope = (f(h) - f(-h)) / (2 * h)
        assert abs(slope + 1) <= 0.01


class TestBInfinity:
    def test_p3(self):
        assert b_infinity_tau(3) == pytest.approx(7 * PI2 / 432, rel=1e-14)
        assert b_infinity_tau(3) == pytest.approx(0.15992414538802201466, rel=1e-14)

    def test_positive(self):
        for p in oracle.primes_up_to(300)[1:]:
            assert b_infinity_tau(p) > 0

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_fit_converges(self, p):
        target = b_infinity_tau(p)
        errs = [abs(quadratic_coefficient_tau(p, k) - target) for k in (100.0, 300.0, 1000.0)]
        assert errs[-1] <= 0.01 * target
        assert errs[-1] <= errs[0]


class TestResonanceExclusion:
    def setup_method(self):
        self.E = ResonanceExclusion(3.2, 8.8, 0.1, 8)

    def test_measure(self):
        assert 0 < self.E.measure() <= 0.1

    def test_intervals_match_membership(self):
        rng = random.Random(1)
        for _ in range(5000):
            x = rng.uniform(3.2, 8.8)
            inside = any(lo < x < hi for lo, hi in self.E.intervals())
            assert inside == self.E.excludes(x)

    @pytest.mark.parametrize("kappa", [1.0, 10.0, 100.0])
    def test_lower_bound_sampled(self, kappa):
        rng = random.Random(2024)
        floor = self.E.lower_bound(kappa)
        checked = 0
        while checked < 1000:
            x = rng.uniform(3.2, 8.8)
            if self.E.excludes(x):
                continue
            assert sigma_partial_sum(x, kappa, 8) >= floor
            checked += 1

    def test_validation(self):
        with pytest.raises(ValueError):
            ResonanceExclusion(3.0, 2.0, 0.1, 8)
        with pytest.raises(ValueError):
            ResonanceExclusion(1.0, 2.0, 1.5, 8)
