"""Elliptic divisibility sequences: exact values, local data, periods,
character criteria and real signs, with a small experiment runner."""

from . import errors
from .curve import (INFINITY, Curve, Point, add, canonical_height, count_points_mod_p,
                    is_on_identity_component, mul, neg, new_curve, ord_mod_p,
                    parse_curve, parse_point)
from .dirichlet import DirichletCharacter, enumerate_characters, kronecker, parse_character
from .eds import (EdsSequence, beta, beta_mod, compute_M, factor_beta, gcd_check,
                  primes_T, verzobio_identity_check)
from .numtheory import FactorBudget, PartialFactorization, factorize
from .padic import mul_valuation_pair, ord_mod_pk, vp_point
from .periodicity import PeriodCertificate, minimal_period_mod, pi_pk, r_pk, simple_bound
from .predicates import (TriState, brauer_vanishing_test, conic_solvable,
                         conic_fiber_check, find_sieve_primes, find_star2_witness,
                         hilbert_symbol, is_sum_of_two_squares, two_squares_tristate)
from .real_signs import (SignData, equidistribution_stats, fit_sign_data,
                         real_period_and_log, verify_sign_law)

__version__ = "0.1.0"

__all__ = [
    "errors", "INFINITY", "Curve", "Point", "add", "canonical_height", "count_points_mod_p",
    "is_on_identity_component", "mul", "neg", "new_curve", "ord_mod_p", "parse_curve",
    "parse_point", "DirichletCharacter", "enumerate_characters", "kronecker",
    "parse_character", "EdsSequence", "beta", "beta_mod", "compute_M", "factor_beta",
    "gcd_check", "primes_T", "verzobio_identity_check", "FactorBudget",
    "PartialFactorization", "factorize", "mul_valuation_pair", "ord_mod_pk", "vp_point",
    "PeriodCertificate", "minimal_period_mod", "pi_pk", "r_pk", "simple_bound", "TriState",
    "brauer_vanishing_test", "conic_solvable", "conic_fiber_check", "find_sieve_primes",
    "find_star2_witness", "hilbert_symbol", "is_sum_of_two_squares", "two_squares_tristate",
    "SignData", "equidistribution_stats", "fit_sign_data", "real_period_and_log",
    "verify_sign_law",
]
