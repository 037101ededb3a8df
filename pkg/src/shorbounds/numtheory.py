"""Deterministic integer primitives: factoring, totient, orders, 2-adic splits.

Everything here is exact. Primality uses a fixed Miller-Rabin witness set that
is proven correct far beyond 2**64, factoring combines trial division with a
deterministic Brent-cycle rho, and Python's native big integers keep the
modular arithmetic overflow-free. All functions are pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, lcm

from .errors import NotAUnitError

__all__ = [
    "Factorization",
    "OrderDecomposition",
    "euler_phi",
    "factorize",
    "gcd",
    "is_prime",
    "lcm",
    "mod_pow",
    "multiplicative_order",
    "v2_split",
]

# Witness bases proving Miller-Rabin exact for every n below this limit
# (well past 2**64), so the test is deterministic on the whole supported range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_EXACT_LIMIT = 3_317_044_064_679_887_385_961_981

_TRIAL_BOUND = 1000


def _small_primes(bound: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(bound**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return tuple(i for i, flag in enumerate(sieve) if flag)


_TRIAL_PRIMES = _small_primes(_TRIAL_BOUND)


def is_prime(n: int) -> bool:
    """Exact deterministic primality test.

    >>> is_prime(13)
    True
    >>> is_prime(1)
    False
    """
    if n < 2:
        return False
    for p in _TRIAL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n >= _MR_EXACT_LIMIT:
        raise ValueError(f"{n} is beyond the deterministic witness range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """An integer n >= 2 with its prime-power decomposition, primes ascending."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"factorizations start at 2, got {self.n}")
        product, previous = 1, 1
        for p, e in self.factors:
            if p <= previous:
                raise ValueError("primes must be distinct and ascending")
            if e < 1:
                raise ValueError(f"exponent of {p} must be positive")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            product *= p**e
            previous = p
        if product != self.n:
            raise ValueError(f"factors multiply to {product}, not {self.n}")

    @property
    def k(self) -> int:
        """Number of distinct prime factors."""
        return len(self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**e for p, e in self.factors)

    @property
    def squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)


@dataclass(frozen=True)
class OrderDecomposition:
    """r written exactly as 2**t * s with s odd."""

    r: int
    t: int
    s: int

    def __post_init__(self) -> None:
        if self.r < 1 or self.s % 2 == 0 or (self.s << self.t) != self.r:
            raise ValueError(f"{self.r} != 2^{self.t} * {self.s}")


def _brent_rho(n: int) -> int:
    # n odd, composite, and free of factors below the trial bound. The cycle
    # polynomial x^2 + c is walked for c = 1, 2, ... until a factor splits off,
    # which keeps the search deterministic.
    for c in itertools.count(1):
        y, r, q = 2, 1, 1
        g = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise AssertionError("unreachable")


def factorize(n: int) -> Factorization:
    """Full prime factorization, deterministic for a given input.

    >>> factorize(15).factors
    ((3, 1), (5, 1))
    """
    if n < 2:
        raise ValueError(f"cannot factorize {n}")
    counts: dict[int, int] = {}
    remaining = n
    for p in _TRIAL_PRIMES:
        if p * p > remaining:
            break
        while remaining % p == 0:
            counts[p] = counts.get(p, 0) + 1
            remaining //= p
    if remaining > 1:
        stack = [remaining]
        while stack:
            m = stack.pop()
            if is_prime(m):
                counts[m] = counts.get(m, 0) + 1
            else:
                d = _brent_rho(m)
                stack.append(d)
                stack.append(m // d)
    return Factorization(n=n, factors=tuple(sorted(counts.items())))


def euler_phi(f: Factorization) -> int:
    """Euler totient from a factorization: product of p^(e-1) * (p-1)."""
    result = 1
    for p, e in f.factors:
        result *= p ** (e - 1) * (p - 1)
    return result


def mod_pow(a: int, exp: int, m: int) -> int:
    """a**exp mod m for m >= 2 and exp >= 0, without intermediate overflow."""
    if m < 2:
        raise ValueError(f"modulus must be at least 2, got {m}")
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(a, exp, m)


def multiplicative_order(a: int, m: int, phi_factors: Factorization | None = None) -> int:
    """Least r >= 1 with a**r == 1 (mod m), for gcd(a, m) = 1.

    Descends from the group order through its prime divisors, so the cost is
    polylogarithmic once phi(m) is factored. Pass ``phi_factors`` (the
    factorization of phi(m)) when calling in a loop over many bases.
    """
    if m < 2:
        raise ValueError(f"modulus must be at least 2, got {m}")
    a %= m
    if gcd(a, m) != 1:
        raise NotAUnitError(f"{a} is not a unit modulo {m}")
    if a == 1:
        return 1
    if phi_factors is None:
        phi = euler_phi(factorize(m))
        if phi == 1:
            return 1
        phi_factors = factorize(phi)
    order = phi_factors.n
    for p, _ in phi_factors.factors:
        while order % p == 0 and pow(a, order // p, m) == 1:
            order //= p
    return order


def v2_split(m: int) -> OrderDecomposition:
    """Split m >= 1 into 2**t * s with s odd and t maximal.

    >>> v2_split(12)
    OrderDecomposition(r=12, t=2, s=3)
    """
    if m < 1:
        raise ValueError(f"cannot 2-adically split {m}")
    t = (m & -m).bit_length() - 1
    return OrderDecomposition(r=m, t=t, s=m >> t)
