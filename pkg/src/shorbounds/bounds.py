"""Success probabilities and repetition-count lower bounds for the gcd split.

The conditional success probability of one pass of the post-processing, given
a coprime base and a correctly recovered order, is the exact rational

    1 - (2**k - 2 + 2**(k * tau_min)) / ((2**k - 1) * 2**tau_sum),

which refines the classical floor 1 - 1/2**(k-1). Repetition counts follow
from N >= ln(1/eps) / P_S with P_S >= (conditional) * alpha * beta / (log2 n)^2
where alpha = exp(-gamma) * log2(e) comes from the totient growth limit.
Probabilities stay exact rationals; floats appear only in the decimal bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import exp, log, log2
from typing import NamedTuple, Sequence

from .counting import GroupProfile, fraction_equal_valuation, fraction_from_tau_vector
from .numtheory import Factorization, euler_phi, factorize

__all__ = [
    "ALPHA",
    "BETA",
    "BoundComparison",
    "BoundReport",
    "CONSTANTS",
    "Constants",
    "EULER_GAMMA",
    "bound_report",
    "compare_bounds",
    "p_a_exact",
    "p_r_exact",
    "phi_ratio_semiprime_bound",
    "probability_grid",
    "ps_lower_bound",
    "repetitions_lower_bound",
    "semiprime_bounds",
    "shor_conditional",
    "shor_repetitions",
    "success_conditional",
    "success_conditional_from_taus",
]

EULER_GAMMA = 0.5772156649015329

# alpha = exp(-gamma) * log2(e); beta uses the same asymptotic derivation.
ALPHA = exp(-EULER_GAMMA) / log(2)
BETA = ALPHA


@dataclass(frozen=True)
class Constants:
    gamma: float
    alpha: float
    beta: float


CONSTANTS = Constants(gamma=EULER_GAMMA, alpha=ALPHA, beta=BETA)


class BoundComparison(NamedTuple):
    precise: Fraction
    shor: Fraction
    gap: Fraction


@dataclass(frozen=True)
class BoundReport:
    """All bound values for one modulus at one epsilon."""

    n: int
    k: int
    tau_min: int
    tau_sum: int
    p_success_conditional: Fraction
    shor_conditional: Fraction
    ps_lower: float
    n_lower_precise: float
    n_lower_shor: float
    epsilon: float

    def __post_init__(self) -> None:
        if self.p_success_conditional < self.shor_conditional:
            raise ValueError("precise conditional fell below the classical floor")
        if self.n_lower_precise > self.n_lower_shor:
            raise ValueError("precise repetition bound exceeded the classical one")


def success_conditional_from_taus(taus: Sequence[int]) -> Fraction:
    """Conditional success probability from the tau vector alone."""
    return 1 - fraction_from_tau_vector(taus)


def success_conditional(g: GroupProfile) -> Fraction:
    """P(even order and nontrivial split | coprime base, true order), exact."""
    return 1 - fraction_equal_valuation(g)


def shor_conditional(k: int) -> Fraction:
    """The classical conditional floor 1 - 1/2**(k-1) for k >= 2 primes."""
    if k < 2:
        raise ValueError(f"need k >= 2 prime factors, got {k}")
    return 1 - Fraction(1, 1 << (k - 1))


def compare_bounds(g: GroupProfile) -> BoundComparison:
    """Precise conditional vs the classical floor; gap is 0 iff every tau is 1."""
    precise = success_conditional(g)
    shor = shor_conditional(g.k)
    return BoundComparison(precise=precise, shor=shor, gap=precise - shor)


def _phi_of(m: int) -> int:
    return 1 if m == 1 else euler_phi(factorize(m))


def p_a_exact(f: Factorization) -> Fraction:
    """Probability phi(n)/(n-1) that a uniform draw from [1, n) is a unit."""
    if f.n < 3:
        raise ValueError("need n >= 3")
    return Fraction(euler_phi(f), f.n - 1)


def p_r_exact(r: int) -> Fraction:
    """Probability phi(r)/r that a uniform d in [0, r) is coprime to r."""
    if r < 1:
        raise ValueError("order must be positive")
    return Fraction(_phi_of(r), r)


def phi_ratio_semiprime_bound(f: Factorization) -> tuple[Fraction, bool]:
    """phi(n)/n for a semiprime n = p*q, with a flag for ratio >= 1/2.

    Odd semiprimes satisfy the flag always (ratio >= 8/15, sharp at n = 15);
    even ones need not.
    """
    if f.k != 2 or not f.squarefree:
        raise ValueError(f"{f.n} is not a product of two distinct primes")
    ratio = Fraction(euler_phi(f), f.n)
    return ratio, ratio >= Fraction(1, 2)


def ps_lower_bound(g: GroupProfile) -> float:
    """Single-pass success probability floor: conditional * alpha*beta / (log2 n)^2."""
    return float(success_conditional(g)) * ALPHA * BETA / log2(g.n) ** 2


def _check_epsilon(epsilon: float) -> None:
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")


def repetitions_lower_bound(g: GroupProfile, epsilon: float) -> float:
    """Repetitions needed for overall success 1 - epsilon, precise conditional."""
    _check_epsilon(epsilon)
    return log(1 / epsilon) * log2(g.n) ** 2 / (ALPHA * BETA * float(success_conditional(g)))


def shor_repetitions(k: int, n: int, epsilon: float) -> float:
    """The classical repetition estimate, using the 1 - 1/2**(k-1) floor."""
    _check_epsilon(epsilon)
    return log(1 / epsilon) * log2(n) ** 2 / (ALPHA * BETA * float(shor_conditional(k)))


def semiprime_bounds(g: GroupProfile, epsilon: float) -> tuple[float, float]:
    """Sharper k = 2 bounds that use phi(n)/n >= 1/2 in place of beta/log2(n).

    Returns (single-pass probability floor, repetition lower bound).
    """
    if g.k != 2:
        raise ValueError(f"semiprime bounds need k = 2, got k = {g.k}")
    _check_epsilon(epsilon)
    conditional = float(success_conditional(g))
    ps = ALPHA * conditional / (2 * log2(g.n))
    reps = 2 * log(1 / epsilon) * log2(g.n) / (ALPHA * conditional)
    return ps, reps


def probability_grid(tau_max: int) -> list[tuple[int, int, Fraction]]:
    """Conditional success probability over the k = 2 grid of (tau_p, tau_q).

    Row-major over 1 <= tau_p, tau_q <= tau_max; the minimum is exactly 1/2 at
    (1, 1).
    """
    if tau_max < 1:
        raise ValueError("tau_max must be at least 1")
    return [
        (tau_p, tau_q, success_conditional_from_taus((tau_p, tau_q)))
        for tau_p in range(1, tau_max + 1)
        for tau_q in range(1, tau_max + 1)
    ]


def bound_report(g: GroupProfile, epsilon: float) -> BoundReport:
    """Assemble every bound for one modulus; invariants are checked on build."""
    _check_epsilon(epsilon)
    return BoundReport(
        n=g.n,
        k=g.k,
        tau_min=g.tau_min,
        tau_sum=g.tau_sum,
        p_success_conditional=success_conditional(g),
        shor_conditional=shor_conditional(g.k),
        ps_lower=ps_lower_bound(g),
        n_lower_precise=repetitions_lower_bound(g, epsilon),
        n_lower_shor=shor_repetitions(g.k, g.n, epsilon),
        epsilon=epsilon,
    )
