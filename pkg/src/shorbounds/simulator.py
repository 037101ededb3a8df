"""Seeded Monte Carlo runs of the order-based factoring post-processing.

Each trial draws a base a from {1, ..., n-1}. A draw sharing a factor with n
counts as a failed coprimality event (the lucky factor is recorded but not
used). Otherwise the exact multiplicative order r stands in for the quantum
step; in sampled-order mode the measurement is modelled as a uniform d in
[0, r) that succeeds iff gcd(d, r) = 1. On an even order the split
gcd(a^(r/2) +- 1, n) is attempted.

Trials are grouped into fixed-size blocks; block b uses the generator
PCG64(SeedSequence(seed, spawn_key=(b,))) and consumes its draws in a fixed
sequence (the base array first, then any d draws). Tallies are therefore
bit-identical for a given (n, trials, seed, mode) no matter how many workers
run the blocks.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from math import gcd, sqrt

import numpy as np

from .counting import profile_group
from .errors import InsufficientDataError
from .numtheory import Factorization, euler_phi, factorize, multiplicative_order

__all__ = [
    "OrderMode",
    "TRIAL_BLOCK",
    "TrialOutcome",
    "TrialTally",
    "conditional_estimate",
    "exhaustive_tally",
    "run_trial",
    "run_trials",
]

TRIAL_BLOCK = 4096


class OrderMode(Enum):
    """How the order-recovery step is treated."""

    EXACT = "exact"
    SAMPLED_D = "sampled"


@dataclass(frozen=True)
class TrialOutcome:
    """Everything observed in a single pass of the algorithm."""

    a: int
    gcd_hit: bool
    a_r_success: bool
    order: int | None = None
    order_even: bool | None = None
    nontrivial_split: bool | None = None
    factors_found: tuple[int, int] | None = None
    lucky_factor: int | None = None


@dataclass(frozen=True)
class TrialTally:
    """Event counts over a batch of trials.

    The chain success <= even_order <= a_r_ok <= a_coprime <= trials holds on
    every run; seed is None for exhaustive (non-random) tallies.
    """

    trials: int
    a_coprime: int
    a_r_ok: int
    even_order: int
    success: int
    lucky: int
    seed: int | None

    def __post_init__(self) -> None:
        chain = (self.success, self.even_order, self.a_r_ok, self.a_coprime, self.trials)
        if any(left > right for left, right in zip(chain, chain[1:])):
            raise ValueError(f"tally chain violated: {chain}")
        if self.lucky + self.a_coprime != self.trials:
            raise ValueError("lucky and coprime counts must partition the trials")


@dataclass(frozen=True)
class _Context:
    n: int
    phi_factors: Factorization


def _context(n: int) -> _Context:
    f = factorize(n)
    profile_group(f)  # validates odd, composite, k >= 2
    return _Context(n=n, phi_factors=factorize(euler_phi(f)))


def _trial(ctx: _Context, a: int, rng, sampled: bool) -> TrialOutcome:
    n = ctx.n
    g = gcd(a, n)
    if g > 1:
        return TrialOutcome(a=a, gcd_hit=True, a_r_success=False, lucky_factor=g)
    r = multiplicative_order(a, n, ctx.phi_factors)
    if sampled:
        d = int(rng.integers(0, r))
        if gcd(d, r) != 1:
            return TrialOutcome(a=a, gcd_hit=False, a_r_success=False, order=r)
    if r % 2 != 0:
        return TrialOutcome(a=a, gcd_hit=False, a_r_success=True, order=r, order_even=False)
    half = pow(a, r // 2, n)
    p_cand = gcd(half + 1, n)
    q_cand = gcd(half - 1, n)
    split = 1 < p_cand < n and 1 < q_cand < n
    return TrialOutcome(
        a=a,
        gcd_hit=False,
        a_r_success=True,
        order=r,
        order_even=True,
        nontrivial_split=split,
        factors_found=(p_cand, q_cand) if split else None,
    )


def run_trial(n: int, mode: OrderMode, rng) -> TrialOutcome:
    """One pass for an odd composite n with k >= 2; rng needs .integers(lo, hi)."""
    ctx = _context(n)
    a = int(rng.integers(1, n))
    return _trial(ctx, a, rng, mode is OrderMode.SAMPLED_D)


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def _run_block(ctx: _Context, seed: int, block: int, count: int, sampled: bool):
    rng = _block_rng(seed, block)
    bases = rng.integers(1, ctx.n, size=count)
    coprime = a_r_ok = even = success = lucky = 0
    for a in bases:
        outcome = _trial(ctx, int(a), rng, sampled)
        if outcome.gcd_hit:
            lucky += 1
            continue
        coprime += 1
        if not outcome.a_r_success:
            continue
        a_r_ok += 1
        if outcome.order_even:
            even += 1
            if outcome.nontrivial_split:
                success += 1
    return coprime, a_r_ok, even, success, lucky


def run_trials(
    n: int,
    trials: int,
    seed: int,
    mode: OrderMode = OrderMode.EXACT,
    jobs: int = 1,
) -> TrialTally:
    """Run a seeded batch of trials; deterministic for fixed (n, trials, seed, mode)."""
    if trials < 1:
        raise ValueError("need at least one trial")
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    if jobs < 1:
        raise ValueError("jobs must be positive")
    ctx = _context(n)
    sampled = mode is OrderMode.SAMPLED_D
    blocks = [
        (block, min(TRIAL_BLOCK, trials - start))
        for block, start in enumerate(range(0, trials, TRIAL_BLOCK))
    ]

    def work(item):
        block, count = item
        return _run_block(ctx, seed, block, count, sampled)

    if jobs == 1:
        partials = [work(item) for item in blocks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            partials = list(pool.map(work, blocks))
    coprime, a_r_ok, even, success, lucky = (sum(column) for column in zip(*partials))
    return TrialTally(
        trials=trials,
        a_coprime=coprime,
        a_r_ok=a_r_ok,
        even_order=even,
        success=success,
        lucky=lucky,
        seed=seed,
    )


def exhaustive_tally(n: int) -> TrialTally:
    """Push every a in {1, ..., n-1} through the trial pipeline exactly once."""
    ctx = _context(n)
    coprime = a_r_ok = even = success = lucky = 0
    for a in range(1, n):
        outcome = _trial(ctx, a, rng=None, sampled=False)
        if outcome.gcd_hit:
            lucky += 1
            continue
        coprime += 1
        a_r_ok += 1
        if outcome.order_even:
            even += 1
            if outcome.nontrivial_split:
                success += 1
    return TrialTally(
        trials=n - 1,
        a_coprime=coprime,
        a_r_ok=a_r_ok,
        even_order=even,
        success=success,
        lucky=lucky,
        seed=None,
    )


def conditional_estimate(tally: TrialTally) -> tuple[float, float]:
    """Empirical conditional success rate and its binomial standard error."""
    denominator = tally.a_r_ok
    if denominator == 0:
        raise InsufficientDataError("no trials passed the coprime and order events")
    p_hat = tally.success / denominator
    return p_hat, sqrt(p_hat * (1 - p_hat) / denominator)
