import pytest

from fejer_prime import oracle


class TestDivisors:
    def test_examples(self):
        assert oracle.divisors(12) == [1, 2, 3, 4, 6, 12]
        assert oracle.divisors(13) == [1, 13]
        assert oracle.divisors(1) == [1]

    def test_perfect_square_has_root_once(self):
        assert oracle.divisors(36) == [1, 2, 3, 4, 6, 9, 12, 18, 36]

    @pytest.mark.parametrize("bad", [0, -3])
    def test_rejects_non_natural(self, bad):
        with pytest.raises(ValueError):
            oracle.divisors(bad)

    def test_brute_force_agreement(self):
        for n in range(1, 500):
            assert oracle.divisors(n) == [d for d in range(1, n + 1) if n % d == 0]


class TestTauSigma:
    def test_examples(self):
        assert oracle.tau(12) == 6
        assert oracle.sigma(6) == 12
        assert oracle.tau(2) == 2

    def test_multiplicative(self):
        for a, b in [(4, 9), (5, 12), (7, 8), (25, 27)]:
            assert oracle.tau(a * b) == oracle.tau(a) * oracle.tau(b)
            assert oracle.sigma(a * b) == oracle.sigma(a) * oracle.sigma(b)


class TestPrimes:
    def test_examples(self):
        assert oracle.is_prime(2)
        assert oracle.prime_pi(50) == 15
        assert oracle.prime_pi(1.5) == 0

    def test_known_counts(self):
        assert oracle.prime_pi(10**4) == 1229
        assert oracle.prime_pi(10**5) == 9592

    def test_prime_iff_two_divisors(self):
        for n in range(1, 5000):
            assert oracle.is_prime(n) == (oracle.tau(n) == 2)

    def test_sieve_matches_trial_division(self):
        flags = oracle.prime_sieve(10**5)
        for n in range(0, 10**5 + 1, 7):
            assert bool(flags[n]) == (n >= 2 and oracle.is_prime(n))

    def test_primes_up_to(self):
        assert oracle.primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
