"""Counts of unit-group elements stratified by the 2-adic valuation of their order.

For an odd prime power q = p**e the unit group mod q is cyclic of order
2**tau * (odd), where p - 1 = 2**tau * sigma. Writing the order of a unit as
2**t * s with s odd, the census of t-values mod p is sigma elements at t = 0
and 2**(t-1) * sigma at each 1 <= t <= tau. For odd n with k >= 2 distinct
prime factors, the fraction of units whose per-prime valuations t_1, ..., t_k
all coincide is

    (2**k - 2 + 2**(k * tau_min)) / ((2**k - 1) * 2**tau_sum),

which is exactly the failure probability of the order-based gcd split. Every
closed form here is paired with a brute-force enumeration oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import (
    EnumerationCapError,
    EvenModulusError,
    NotSquarefreeError,
    PrimePowerError,
)
from .numtheory import Factorization, euler_phi, factorize, is_prime, multiplicative_order, v2_split

__all__ = [
    "DEFAULT_MAX_ENUMERATION",
    "GroupProfile",
    "OddPrimeProfile",
    "ValuationCensus",
    "census_mod_p_bruteforce",
    "count_equal_valuation",
    "count_equal_valuation_general",
    "count_odd_order_mod_p",
    "count_valuation_mod_p",
    "equal_valuation_bruteforce",
    "fraction_equal_valuation",
    "fraction_from_tau_vector",
    "profile_group",
]

DEFAULT_MAX_ENUMERATION = 10**6

# Census of 2-adic order valuations: map t -> element count.
ValuationCensus = dict[int, int]


@dataclass(frozen=True)
class OddPrimeProfile:
    """One odd prime power p**e with p - 1 = 2**tau * sigma, sigma odd."""

    p: int
    e: int
    tau: int
    sigma: int

    def __post_init__(self) -> None:
        if self.p < 3 or self.p % 2 == 0 or not is_prime(self.p):
            raise ValueError(f"{self.p} is not an odd prime")
        if self.tau < 1 or self.sigma % 2 == 0 or (self.sigma << self.tau) != self.p - 1:
            raise ValueError(f"{self.p} - 1 != 2^{self.tau} * {self.sigma}")
        if self.e < 1:
            raise ValueError("exponent must be positive")

    @property
    def prime_power(self) -> int:
        return self.p**self.e


@dataclass(frozen=True)
class GroupProfile:
    """Per-prime 2-adic structure of the unit group mod an odd n, k >= 2."""

    n: int
    profiles: tuple[OddPrimeProfile, ...]
    tau_min: int
    tau_sum: int
    squarefree: bool

    def __post_init__(self) -> None:
        if len(self.profiles) < 2:
            raise ValueError("a group profile needs at least two primes")
        product = 1
        for q in self.profiles:
            product *= q.prime_power
        if product != self.n or self.n % 2 == 0:
            raise ValueError(f"profiles do not describe an odd {self.n}")
        taus = [q.tau for q in self.profiles]
        if self.tau_min != min(taus) or self.tau_sum != sum(taus):
            raise ValueError("tau_min/tau_sum inconsistent with the profiles")

    @property
    def k(self) -> int:
        return len(self.profiles)

    @property
    def group_order(self) -> int:
        result = 1
        for q in self.profiles:
            result *= q.p ** (q.e - 1) * (q.p - 1)
        return result


def profile_group(f: Factorization) -> GroupProfile:
    """Extract the tau/sigma structure of every prime of an odd n with k >= 2."""
    if f.n % 2 == 0:
        raise EvenModulusError(f"{f.n} is even; only odd moduli are supported")
    if f.k < 2:
        raise PrimePowerError(f"{f.n} has a single prime factor; need k >= 2")
    profiles = []
    for p, e in f.factors:
        dec = v2_split(p - 1)
        profiles.append(OddPrimeProfile(p=p, e=e, tau=dec.t, sigma=dec.s))
    taus = [q.tau for q in profiles]
    return GroupProfile(
        n=f.n,
        profiles=tuple(profiles),
        tau_min=min(taus),
        tau_sum=sum(taus),
        squarefree=f.squarefree,
    )


def count_odd_order_mod_p(profile: OddPrimeProfile) -> int:
    """Number of elements of (Z/pZ)* whose order is odd: exactly sigma."""
    return profile.sigma


def count_valuation_mod_p(profile: OddPrimeProfile, t: int) -> int:
    """Number of elements of (Z/pZ)* whose order has 2-adic valuation t."""
    if t < 0 or t > profile.tau:
        raise ValueError(f"t={t} outside [0, {profile.tau}] for p={profile.p}")
    if t == 0:
        return profile.sigma
    return (1 << (t - 1)) * profile.sigma


def census_mod_p_bruteforce(p: int, max_enumeration: int = DEFAULT_MAX_ENUMERATION) -> ValuationCensus:
    """Tally v2(order of a mod p) over every a in [1, p) by direct computation."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if p > max_enumeration:
        raise EnumerationCapError(f"p={p} exceeds the enumeration cap {max_enumeration}")
    phi_factors = factorize(p - 1)
    census: ValuationCensus = {}
    for a in range(1, p):
        r = multiplicative_order(a, p, phi_factors)
        t = (r & -r).bit_length() - 1  # v2(r)
        census[t] = census.get(t, 0) + 1
    return census


def fraction_from_tau_vector(taus: Sequence[int]) -> Fraction:
    """Equal-valuation fraction from the tau vector alone; k is len(taus)."""
    k = len(taus)
    if k < 2:
        raise ValueError("need at least two tau values")
    if any(t < 1 for t in taus):
        raise ValueError("every tau must be at least 1")
    numerator = (1 << k) - 2 + (1 << (k * min(taus)))
    return Fraction(numerator, ((1 << k) - 1) << sum(taus))


def fraction_equal_valuation(g: GroupProfile) -> Fraction:
    """Fraction of units whose per-prime order valuations all coincide."""
    return fraction_from_tau_vector([q.tau for q in g.profiles])


def count_equal_valuation(g: GroupProfile) -> int:
    """Closed-form equal-valuation count for squarefree n.

    The division by 2**k - 1 is always exact; that is asserted rather than
    assumed.
    """
    if not g.squarefree:
        raise NotSquarefreeError(
            f"{g.n} has a repeated prime; use count_equal_valuation_general"
        )
    k = g.k
    numerator = (1 << k) - 2 + (1 << (k * g.tau_min))
    quotient, remainder = divmod(numerator, (1 << k) - 1)
    assert remainder == 0, "2^k - 1 must divide 2^k - 2 + 2^(k*tau_min)"
    for q in g.profiles:
        quotient *= q.sigma
    return quotient


def count_equal_valuation_general(g: GroupProfile) -> int:
    """Equal-valuation count for any odd n with k >= 2, including prime powers.

    The per-prime-power unit groups are cyclic with the same 2-part as for
    e = 1, so the squarefree fraction carries over and the count is the
    fraction times the group order.
    """
    count = fraction_equal_valuation(g) * g.group_order
    assert count.denominator == 1, "equal-valuation count must be an integer"
    return count.numerator


def _pow_mod_vector(base: np.ndarray, exp: int, mod: int) -> np.ndarray:
    result = np.ones_like(base)
    base = base % mod
    while exp:
        if exp & 1:
            result = result * base % mod
        base = base * base % mod
        exp >>= 1
    return result


@lru_cache(maxsize=None)
def _valuation_table(q: int) -> np.ndarray:
    """Residue-indexed table of v2(order mod q) for an odd prime power q.

    Non-units are marked -1. Each unit's valuation is computed directly: raise
    to the odd part of the group order, then count squarings until 1.
    """
    if q >= 1 << 31:
        raise EnumerationCapError(f"{q} is too large for the int64 residue table")
    f = factorize(q)
    if f.k != 1 or f.n % 2 == 0:
        raise ValueError(f"{q} is not an odd prime power")
    p = f.factors[0][0]
    dec = v2_split(euler_phi(f))
    residues = np.arange(q, dtype=np.int64)
    unit = residues % p != 0
    x = _pow_mod_vector(residues, dec.s, q)
    table = np.zeros(q, dtype=np.int8)
    alive = unit & (x != 1)
    for t in range(1, dec.t + 1):
        if not alive.any():
            break
        x[alive] = x[alive] * x[alive] % q
        finished = alive & (x == 1)
        table[finished] = t
        alive &= ~finished
    if alive.any():
        raise AssertionError("a unit's 2-part exceeded the group's 2-part")
    table[~unit] = -1
    table.flags.writeable = False  # shared through the cache
    return table


def equal_valuation_bruteforce(
    n: int, max_enumeration: int = DEFAULT_MAX_ENUMERATION
) -> tuple[int, int]:
    """Enumerate every a in [1, n) with gcd(a, n) = 1 and count equal valuations.

    For each unit the valuation t_i = v2(order of a mod p_i**e_i) is read off a
    per-prime-power table; the returned pair is (count with all t_i equal,
    total units). Never consults the closed forms.
    """
    f = factorize(n)
    if n % 2 == 0:
        raise EvenModulusError(f"{n} is even; only odd moduli are supported")
    if f.k < 2:
        raise PrimePowerError(f"{n} has a single prime factor; need k >= 2")
    if n > max_enumeration:
        raise EnumerationCapError(f"n={n} exceeds the enumeration cap {max_enumeration}")
    residues = np.arange(n, dtype=np.int64)
    valuations = [
        np.asarray(_valuation_table(p**e))[residues % (p**e)] for p, e in f.factors
    ]
    unit = valuations[0] >= 0
    equal = np.ones(n, dtype=bool)
    for t in valuations[1:]:
        unit &= t >= 0
        equal &= valuations[0] == t
    count = int(np.count_nonzero(equal & unit))
    total = int(np.count_nonzero(unit))
    assert total == euler_phi(f)
    return count, total
