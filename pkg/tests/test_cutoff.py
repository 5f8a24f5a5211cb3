import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fejer_prime.cutoff import phi, phi_complement, phi_complement_ratio, phi_ratio

kappas = st.floats(min_value=1e-3, max_value=1e4)
us = st.floats(min_value=-5.0, max_value=5.0)


class TestPhi:
    @pytest.mark.parametrize("kappa", [0.1, 2.0, 100.0, 1e6])
    def test_half_at_one(self, kappa):
        assert phi(1.0, kappa) == 0.5
        assert phi_complement(1.0, kappa) == 0.5

    def test_examples(self):
        assert phi(0.0, 1000.0) == 1.0
        assert phi(2.0, 10.0) == pytest.approx(1 / (1 + math.exp(20)), rel=1e-14)
        assert phi(2.0, 10.0) == pytest.approx(2.061e-9, rel=1e-3)

    def test_matches_tanh_form(self):
        for u in (0.3, 0.9, 1.05, 1.7):
            for kappa in (0.5, 3.0, 20.0):
                with mpmath.workdps(40):
                    want = (1 - mpmath.tanh(mpmath.mpf(kappa) * (mpmath.mpf(u) - 1))) / 2
                assert phi(u, kappa) == pytest.approx(float(want), rel=1e-12)

    @given(us, kappas)
    def test_symmetry(self, u, kappa):
        assert phi(u, kappa) + phi(2 - u, kappa) == pytest.approx(1.0, abs=1e-15)

    @given(us, kappas)
    def test_complement_sums_to_one(self, u, kappa):
        assert phi(u, kappa) + phi_complement(u, kappa) == pytest.approx(1.0, abs=1e-15)

    @given(us, us, kappas)
    def test_nonincreasing(self, u, v, kappa):
        lo, hi = min(u, v), max(u, v)
        assert phi(lo, kappa) >= phi(hi, kappa)

    def test_steep_limit(self):
        assert phi(0.999, 1e6) == 1.0
        assert phi(1.001, 1e6) == 0.0

    def test_no_overflow(self):
        assert phi(1e9, 1e9) == 0.0
        assert phi(-1e9, 1e9) == 1.0

    @pytest.mark.parametrize("kappa", [0.0, -1.0, float("nan")])
    def test_rejects_bad_kappa(self, kappa):
        with pytest.raises(ValueError):
            phi(0.5, kappa)


class TestRatioForms:
    def test_ratio_agrees_with_quotient(self):
        for num, den in [(3, 4), (12, 13), (7, 5)]:
            assert phi_ratio(num, den, 4.0) == pytest.approx(phi(num / den, 4.0), rel=1e-14)

    def test_complement_keeps_tiny_values(self):
        # 1 - phi(p/(p+1)) for p = 3, kappa = 20 is about 1.4e-5 / 3
        got = phi_complement_ratio(3, 4, 20.0)
        assert got == pytest.approx((1 - math.tanh(5.0)) / 2, rel=1e-13)
        assert phi_complement_ratio(10000, 10001, 19.0 * 10001) > 0
