"""Integer primitive tests, each derived value recomputed by an independent oracle."""

from math import gcd, isqrt

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from shorbounds.errors import NotAUnitError
from shorbounds.numtheory import (
    Factorization,
    euler_phi,
    factorize,
    is_prime,
    lcm,
    mod_pow,
    multiplicative_order,
    v2_split,
)


def trial_division(n: int) -> list[tuple[int, int]]:
    """Oracle: plain trial division up to sqrt(n)."""
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            e += 1
            n //= d
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def naive_order(a: int, m: int) -> int:
    """Oracle: multiply until the unit cycles back to 1."""
    x = a % m
    r = 1
    while x != 1:
        x = x * a % m
        r += 1
    return r


class TestFactorize:
    def test_semiprime(self):
        assert factorize(15).factors == ((3, 1), (5, 1))

    def test_prime_power(self):
        assert factorize(4).factors == ((2, 2),)

    def test_against_trial_division(self):
        assert factorize(1071225).factors == tuple(trial_division(1071225))

    def test_rejects_below_two(self):
        with pytest.raises(ValueError):
            factorize(1)
        with pytest.raises(ValueError):
            factorize(0)

    def test_deterministic(self):
        assert factorize(2**4 * 3 * 9973) == factorize(2**4 * 3 * 9973)

    def test_large_semiprime_with_big_factors(self):
        # both factors above the trial-division bound, forcing the rho path
        n = 1000003 * 1000033
        assert factorize(n).factors == ((1000003, 1), (1000033, 1))

    @given(st.integers(2, 10**6))
    @settings(max_examples=300)
    def test_roundtrip(self, n):
        f = factorize(n)
        product = 1
        for p, e in f.factors:
            product *= p**e
        assert product == n

    def test_roundtrip_exhaustive_small(self):
        for n in range(2, 5000):
            f = factorize(n)
            product = 1
            for p, e in f.factors:
                product *= p**e
            assert product == n

    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            Factorization(n=15, factors=((5, 1), (3, 1)))  # not ascending
        with pytest.raises(ValueError):
            Factorization(n=15, factors=((3, 1), (6, 1)))  # 6 not prime
        with pytest.raises(ValueError):
            Factorization(n=16, factors=((2, 3),))  # wrong product


class TestEulerPhi:
    def test_fixtures(self):
        assert euler_phi(factorize(15)) == 8
        assert euler_phi(factorize(13)) == 12

    def test_coprime_count_oracle(self):
        n = 300009  # 3 * 100003, a stand-in small enough to count directly
        expected = sum(1 for a in range(1, n) if gcd(a, n) == 1)
        assert euler_phi(factorize(n)) == expected

    def test_divisor_sum_identity(self):
        # sum of phi(d) over d | m equals m, for every m up to 1e5
        limit = 10**5
        phi = list(range(limit + 1))
        for p in range(2, limit + 1):
            if phi[p] == p:  # p prime
                for m in range(p, limit + 1, p):
                    phi[m] -= phi[m] // p
        acc = [0] * (limit + 1)
        for d in range(1, limit + 1):
            for m in range(d, limit + 1, d):
                acc[m] += phi[d]
        assert all(acc[m] == m for m in range(1, limit + 1))


class TestModPow:
    def test_fixtures(self):
        assert mod_pow(2, 4, 15) == 1
        assert mod_pow(7, 0, 13) == 1

    def test_pseudoprime_case_against_naive(self):
        # oracle: 560 explicit multiplications mod the pseudoprime 561
        x = 1
        for _ in range(560):
            x = x * 2 % 561
        assert x == 1
        assert mod_pow(2, 560, 561) == 1
        # base 3 shares a factor with 561, so it does not cycle to 1
        y = 1
        for _ in range(560):
            y = y * 3 % 561
        assert mod_pow(3, 560, 561) == y == 375

    def test_negative_base_reduced(self):
        assert mod_pow(-2, 3, 15) == (-8) % 15

    def test_bad_modulus(self):
        with pytest.raises(ValueError):
            mod_pow(2, 3, 1)
        with pytest.raises(ValueError):
            mod_pow(2, -1, 5)


class TestMultiplicativeOrder:
    def test_fixtures(self):
        assert multiplicative_order(2, 15) == 4
        for m in (2, 7, 15, 100):
            assert multiplicative_order(1, m) == 1

    def test_against_naive_loop(self):
        assert multiplicative_order(7, 561) == naive_order(7, 561)

    def test_not_a_unit(self):
        with pytest.raises(NotAUnitError):
            multiplicative_order(6, 15)

    def test_precomputed_phi_factors(self):
        phi_f = factorize(euler_phi(factorize(15)))
        assert multiplicative_order(2, 15, phi_f) == 4

    @given(st.integers(2, 2000), st.integers(1, 10**9))
    @settings(max_examples=300, deadline=None)
    def test_matches_naive_oracle(self, m, raw):
        a = 1 + raw % (m - 1) if m > 2 else 1
        assume(gcd(a, m) == 1)
        assert multiplicative_order(a, m) == naive_order(a, m)

    def test_order_divides_group_order(self):
        for p in [p for p in range(3, 1000) if is_prime(p)] + [9973]:
            phi_f = factorize(p - 1)
            for a in range(1, p):
                assert (p - 1) % multiplicative_order(a, p, phi_f) == 0


class TestV2Split:
    def test_fixtures(self):
        assert (v2_split(12).t, v2_split(12).s) == (2, 3)
        assert (v2_split(7).t, v2_split(7).s) == (0, 7)
        d = v2_split(2**20 * 3**5)
        assert (d.t, d.s) == (20, 3**5)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            v2_split(0)

    def test_roundtrip_exhaustive(self):
        for m in range(1, 10**6 + 1):
            d = v2_split(m)
            assert d.s % 2 == 1 and (d.s << d.t) == m


class TestGcdLcm:
    def test_fixtures(self):
        assert gcd(14, 15) == 1
        assert lcm(4, 6) == 12
        assert gcd(0, 0) == 0

    def test_split_example(self):
        # the even-order split for a=2, n=15: gcd(2^(r/2) - 1, 15) with r = 4
        r = multiplicative_order(2, 15)
        assert gcd(pow(2, r // 2) - 1, 15) == 3

    @given(st.integers(1, 10**9), st.integers(1, 10**9))
    def test_product_identity(self, a, b):
        assert gcd(a, b) * lcm(a, b) == a * b


class TestIsPrime:
    def test_fixtures(self):
        assert is_prime(13)
        assert not is_prime(1)

    def test_strong_pseudoprime_is_composite(self):
        n = 3215031751
        assert not is_prime(n)
        f = factorize(n)  # verify compositeness by exhibiting the factors
        assert f.k > 1 and all(is_prime(p) for p in f.primes)

    def test_matches_trial_division_small(self):
        for n in range(5000):
            assert is_prime(n) == (n >= 2 and all(n % d for d in range(2, isqrt(n) + 1)))

    def test_exactness_domain_is_bounded(self):
        # 2^89 - 1 has no small factor, so it reaches the witness-range check
        with pytest.raises(ValueError):
            is_prime(2**89 - 1)
