"""Command-line front end: analyze, verify, simulate, sweep.

Every command writes a single JSON document to stdout (sweep defaults to CSV);
diagnostics go to stderr. Rationals are serialized as "num/den" strings and
every decimal field sits next to its exact rational source when one exists.
"""

from __future__ import annotations

import argparse
import decimal
import json
import math
import os
import sys
from fractions import Fraction

from . import __version__
from .bounds import (
    CONSTANTS,
    bound_report,
    compare_bounds,
    p_a_exact,
    phi_ratio_semiprime_bound,
    probability_grid,
    semiprime_bounds,
    success_conditional,
)
from .counting import (
    DEFAULT_MAX_ENUMERATION,
    equal_valuation_bruteforce,
    fraction_equal_valuation,
    profile_group,
)
from .errors import EnumerationCapError
from .numtheory import factorize
from .simulator import TRIAL_BLOCK, OrderMode, conditional_estimate, run_trials

MAX_ENUM_ENV = "SHORBOUNDS_MAX_ENUM"
DEFAULT_EPSILON = 0.01

SWEEP_CSV_HEADER = "tau_p,tau_q,prob_num,prob_den,prob_decimal"


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def decimal_str(x: Fraction | float, digits: int = 12) -> str:
    """Decimal presentation at 12 significant digits, round-half-even."""
    if isinstance(x, Fraction):
        with decimal.localcontext() as ctx:
            ctx.prec = digits
            ctx.rounding = decimal.ROUND_HALF_EVEN
            return str(decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator))
    return format(float(x), f".{digits}g")


def _pair(x: Fraction) -> dict:
    return {"rational": fraction_str(x), "decimal": decimal_str(x)}


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def _emit(doc: dict) -> None:
    print(canonical_json(doc))


def _max_enumeration(args) -> int:
    if getattr(args, "max_enumeration", None) is not None:
        return args.max_enumeration
    env = os.environ.get(MAX_ENUM_ENV)
    if env is not None:
        return int(env)
    return DEFAULT_MAX_ENUMERATION


def _reps_field(value: float, do_ceil: bool):
    """Repetition bounds stay real-valued unless the ceiling was asked for."""
    return math.ceil(value) if do_ceil else decimal_str(value)


def cmd_analyze(args) -> int:
    f = factorize(args.n)
    g = profile_group(f)
    report = bound_report(g, args.epsilon)
    comparison = compare_bounds(g)
    doc = {
        "command": "analyze",
        "version": __version__,
        "params": {"n": args.n, "epsilon": args.epsilon, "ceil_n": bool(args.ceil_n)},
        "factorization": {"n": f.n, "factors": [[p, e] for p, e in f.factors]},
        "profile": {
            "k": g.k,
            "tau_min": g.tau_min,
            "tau_sum": g.tau_sum,
            "squarefree": g.squarefree,
            "primes": [
                {"p": q.p, "e": q.e, "tau": q.tau, "sigma": q.sigma} for q in g.profiles
            ],
        },
        "probabilities": {
            "success_conditional": _pair(comparison.precise),
            "shor_conditional": _pair(comparison.shor),
            "gap": _pair(comparison.gap),
            "p_a_exact": _pair(p_a_exact(f)),
            # The order is unknown here, so only the asymptotic floor for the
            # order-recovery probability can be quoted; it is flagged as such.
            "p_r_floor": {
                "decimal": decimal_str(CONSTANTS.alpha / math.log2(f.n)),
                "asymptotic": True,
            },
        },
        "bounds": {
            "epsilon": decimal_str(report.epsilon),
            "ps_lower": decimal_str(report.ps_lower),
            "n_lower_precise": _reps_field(report.n_lower_precise, args.ceil_n),
            "n_lower_shor": _reps_field(report.n_lower_shor, args.ceil_n),
        },
        "constants": {
            "alpha": decimal_str(CONSTANTS.alpha),
            "beta": decimal_str(CONSTANTS.beta),
            "gamma": decimal_str(CONSTANTS.gamma, digits=16),
        },
    }
    if g.k == 2 and g.squarefree:
        ps_semi, reps_semi = semiprime_bounds(g, args.epsilon)
        ratio, meets_half = phi_ratio_semiprime_bound(f)
        doc["semiprime"] = {
            "ps_lower": decimal_str(ps_semi),
            "n_lower": _reps_field(reps_semi, args.ceil_n),
            "phi_ratio": _pair(ratio),
            "meets_half": meets_half,
        }
    _emit(doc)
    return 0


def _verify_one(n: int, cap: int, squarefree_only: bool) -> dict | None:
    if n < 2:
        return {"n": n, "skipped": "n < 2"}
    if n % 2 == 0:
        return {"n": n, "skipped": "even modulus"}
    f = factorize(n)
    if f.k < 2:
        return {"n": n, "skipped": "k = 1"}
    if squarefree_only and not f.squarefree:
        return None
    try:
        count, total = equal_valuation_bruteforce(n, max_enumeration=cap)
    except EnumerationCapError as exc:
        return {"n": n, "error": {"type": type(exc).__name__, "message": str(exc)}}
    formula = fraction_equal_valuation(profile_group(f))
    return {
        "n": n,
        "k": f.k,
        "squarefree": f.squarefree,
        "formula": fraction_str(formula),
        "oracle": f"{count}/{total}",
        "match": Fraction(count, total) == formula,
    }


def cmd_verify(args) -> int:
    if args.n is None and args.range is None:
        raise ValueError("verify needs a modulus or --range LO HI")
    if args.n is not None and args.range is not None:
        raise ValueError("give either a single modulus or --range, not both")
    cap = _max_enumeration(args)
    if args.range is not None:
        lo, hi = args.range
        candidates = range(lo, hi + 1)
    else:
        candidates = [args.n]
    items = []
    for n in candidates:
        item = _verify_one(n, cap, args.squarefree_only)
        if item is not None:
            items.append(item)
    summary = {
        "checked": sum(1 for i in items if "match" in i),
        "matched": sum(1 for i in items if i.get("match") is True),
        "mismatched": sum(1 for i in items if i.get("match") is False),
        "skipped": sum(1 for i in items if "skipped" in i),
        "errors": sum(1 for i in items if "error" in i),
    }
    doc = {
        "command": "verify",
        "version": __version__,
        "params": {
            "n": args.n,
            "range": list(args.range) if args.range else None,
            "squarefree_only": bool(args.squarefree_only),
            "max_enumeration": cap,
        },
        "items": items,
        "summary": summary,
    }
    _emit(doc)
    print(
        f"verify: {summary['checked']} checked, {summary['mismatched']} mismatched, "
        f"{summary['skipped']} skipped, {summary['errors']} errors",
        file=sys.stderr,
    )
    return 0 if summary["mismatched"] == 0 and summary["errors"] == 0 else 1


def cmd_simulate(args) -> int:
    mode = OrderMode.EXACT if args.order_mode == "exact" else OrderMode.SAMPLED_D
    tally = run_trials(args.n, args.trials, args.seed, mode=mode, jobs=args.jobs)
    p_hat, std_err = conditional_estimate(tally)
    exact = success_conditional(profile_group(factorize(args.n)))
    if std_err > 0:
        z = (p_hat - float(exact)) / std_err
    else:
        z = 0.0 if p_hat == float(exact) else math.inf
    doc = {
        "command": "simulate",
        "version": __version__,
        "params": {
            "n": args.n,
            "trials": args.trials,
            "seed": args.seed,
            "order_mode": mode.value,
            "jobs": args.jobs,
        },
        "rng": {"algorithm": "pcg64", "seed": args.seed, "trial_block": TRIAL_BLOCK},
        "tally": {
            "trials": tally.trials,
            "a_coprime": tally.a_coprime,
            "a_r_ok": tally.a_r_ok,
            "even_order": tally.even_order,
            "success": tally.success,
            "lucky": tally.lucky,
            "seed": tally.seed,
        },
        "estimate": {
            "p_hat": decimal_str(p_hat),
            "std_err": decimal_str(std_err),
            "z": decimal_str(z),
        },
        "exact": {"success_conditional": _pair(exact)},
    }
    _emit(doc)
    return 0


def cmd_sweep(args) -> int:
    if args.k != 2:
        raise ValueError("the sweep grid is defined for k = 2 only")
    if args.tau_max < 1:
        raise ValueError("--tau-max must be at least 1")
    rows = probability_grid(args.tau_max)
    minimum = min(rows, key=lambda row: (row[2], row[0], row[1]))
    if args.plot is not None:
        from .plotting import render_probability_surface

        out = render_probability_surface(rows, args.plot)
        print(f"sweep: wrote figure to {out}", file=sys.stderr)
    if args.format == "csv":
        print(SWEEP_CSV_HEADER)
        for tau_p, tau_q, prob in rows:
            print(f"{tau_p},{tau_q},{prob.numerator},{prob.denominator},{decimal_str(prob)}")
        print(
            f"sweep: minimum {fraction_str(minimum[2])} at "
            f"(tau_p={minimum[0]}, tau_q={minimum[1]})",
            file=sys.stderr,
        )
    else:
        doc = {
            "command": "sweep",
            "version": __version__,
            "params": {"k": args.k, "tau_max": args.tau_max},
            "rows": [
                {"tau_p": tp, "tau_q": tq, "probability": _pair(prob)}
                for tp, tq, prob in rows
            ],
            "minimum": {
                "tau_p": minimum[0],
                "tau_q": minimum[1],
                "probability": _pair(minimum[2]),
            },
        }
        _emit(doc)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shorbounds",
        description=(
            "Exact success probabilities and repetition bounds for the classical "
            "post-processing of the quantum factoring algorithm."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="bounds and probabilities for one modulus")
    analyze.add_argument("n", type=int)
    analyze.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    analyze.add_argument("--ceil-n", action="store_true", help="round repetition bounds up")
    analyze.add_argument("--format", choices=["json", "csv"], default="json")
    analyze.set_defaults(func=cmd_analyze)

    verify = sub.add_parser("verify", help="closed form vs brute-force enumeration")
    verify.add_argument("n", type=int, nargs="?")
    verify.add_argument("--range", type=int, nargs=2, metavar=("LO", "HI"))
    verify.add_argument("--squarefree-only", action="store_true")
    verify.add_argument("--max-enumeration", type=int, default=None)
    verify.add_argument("--format", choices=["json", "csv"], default="json")
    verify.set_defaults(func=cmd_verify)

    simulate = sub.add_parser("simulate", help="seeded Monte Carlo trials")
    simulate.add_argument("n", type=int)
    simulate.add_argument("--trials", type=int, default=100_000)
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--order-mode", choices=["exact", "sampled"], default="exact")
    simulate.add_argument("--jobs", type=int, default=1)
    simulate.add_argument("--format", choices=["json", "csv"], default="json")
    simulate.set_defaults(func=cmd_simulate)

    sweep = sub.add_parser("sweep", help="success probability over the (tau_p, tau_q) grid")
    sweep.add_argument("--k", type=int, default=2)
    sweep.add_argument("--tau-max", type=int, default=8)
    sweep.add_argument("--format", choices=["json", "csv"], default="csv")
    sweep.add_argument(
        "--emit-plot-data",
        action="store_true",
        help="alias for the default grid output, one row per surface point",
    )
    sweep.add_argument("--plot", metavar="FILE", default=None, help="render the grid to FILE")
    sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "csv" and args.command != "sweep":
        parser.error(f"{args.command} emits JSON only; csv is available for sweep")
    try:
        return args.func(args)
    except ValueError as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
        return 1


if __name__ == "__main__":
    sys.exit(main())
