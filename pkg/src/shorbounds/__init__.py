"""Exact bounds, counts and simulations for order-based factoring post-processing."""

from .bounds import (
    ALPHA,
    BETA,
    CONSTANTS,
    EULER_GAMMA,
    BoundComparison,
    BoundReport,
    Constants,
    bound_report,
    compare_bounds,
    p_a_exact,
    p_r_exact,
    phi_ratio_semiprime_bound,
    probability_grid,
    ps_lower_bound,
    repetitions_lower_bound,
    semiprime_bounds,
    shor_conditional,
    shor_repetitions,
    success_conditional,
    success_conditional_from_taus,
)
from .counting import (
    DEFAULT_MAX_ENUMERATION,
    GroupProfile,
    OddPrimeProfile,
    ValuationCensus,
    census_mod_p_bruteforce,
    count_equal_valuation,
    count_equal_valuation_general,
    count_odd_order_mod_p,
    count_valuation_mod_p,
    equal_valuation_bruteforce,
    fraction_equal_valuation,
    fraction_from_tau_vector,
    profile_group,
)
from .errors import (
    EnumerationCapError,
    EvenModulusError,
    InsufficientDataError,
    NotAUnitError,
    NotSquarefreeError,
    PrimePowerError,
)
from .numtheory import (
    Factorization,
    OrderDecomposition,
    euler_phi,
    factorize,
    gcd,
    is_prime,
    lcm,
    mod_pow,
    multiplicative_order,
    v2_split,
)
from .simulator import (
    OrderMode,
    TrialOutcome,
    TrialTally,
    conditional_estimate,
    exhaustive_tally,
    run_trial,
    run_trials,
)

__version__ = "0.1.0"
