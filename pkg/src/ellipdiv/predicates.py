"""Local symbols and the arithmetic predicates evaluated along nP.

Predicates that depend on factoring report a :class:`TriState` so that a
factoring failure is never silently read as a yes or a no.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np

from .curve import _mul, is_on_identity_component
from .dirichlet import DirichletCharacter, eval_char, value_order
from .eds import EdsSequence, beta, beta_mod_range, factor_beta, primes_T
from .errors import FactoringBudgetExceeded, FiberDegenerate, HypothesisNotMet
from .numtheory import FactorBudget, factor_completely, factorize, legendre, primes_upto, vp_int
from .periodicity import minimal_period_mod

__all__ = [
    "TriState",
    "hilbert_symbol",
    "conic_solvable",
    "two_squares_tristate",
    "is_sum_of_two_squares",
    "default_S",
    "brauer_vanishing_test",
    "Star2Witness",
    "find_star2_witness",
    "conic_fiber_value",
    "conic_fiber_check",
    "find_sieve_primes",
]

log = logging.getLogger(__name__)


class TriState(enum.Enum):
    NONZERO = "Nonzero"
    POSSIBLY_ZERO = "PossiblyZero"
    UNKNOWN = "Unknown"


# -- Hilbert symbols ------------------------------------------------------------

def _square_class_int(r) -> int:
    """An integer in the same square class as the nonzero rational r."""
    r = Fraction(r)
    if r == 0:
        raise ValueError("Hilbert symbol of 0")
    return r.numerator * r.denominator


def _split(a: int, p: int):
    v = vp_int(a, p)
    return v, a // p**v


def hilbert_symbol(a, b, place) -> int:
    """(a, b)_v for nonzero rationals; place is 'real' or a prime."""
    a, b = _square_class_int(a), _square_class_int(b)
    if place in ("real", "inf", math.inf):
        return -1 if a < 0 and b < 0 else 1
    p = int(place)
    alpha, u = _split(a, p)
    beta_, v = _split(b, p)
    if p == 2:
        eps = lambda t: ((t - 1) // 2) % 2
        omega = lambda t: ((t * t - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta_ * omega(u)
        return -1 if e % 2 else 1
    s = -1 if (alpha * beta_ * ((p - 1) // 2)) % 2 else 1
    if beta_ % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(v, p)
    return s


def _relevant_primes(values, budget):
    n = 2
    for r in values:
        r = Fraction(r)
        n *= abs(r.numerator) * r.denominator
    return sorted(factor_completely(n, budget))


def conic_solvable(a, b, c, budget: FactorBudget | None = None) -> bool:
    """Whether a x^2 + b y^2 + c z^2 = 0 has a nontrivial rational zero."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if 0 in (a, b, c):
        raise ValueError("coefficients must be nonzero")
    s, t = -a * c, -b * c
    if hilbert_symbol(s, t, "real") != 1:
        return False
    return all(hilbert_symbol(s, t, p) == 1 for p in _relevant_primes((a, b, c), budget))


# -- sums of two squares -----------------------------------------------------------

def _two_squares_from_parts(odd_3mod4: bool, cofactor: int):
    if odd_3mod4:
        return False
    if cofactor == 1 or gmpy2.is_square(cofactor):
        return True
    if cofactor % 4 == 3:
        # an odd number = 3 mod 4 has a prime = 3 mod 4 to an odd power
        return False
    return None


def _parity_3mod4(factors: dict) -> bool:
    return any(p % 4 == 3 and e % 2 for p, e in factors.items())


def two_squares_tristate(r, budget: FactorBudget | None = None):
    """True / False, or None when factoring within budget cannot decide."""
    r = Fraction(r)
    if r == 0:
        return True
    if r < 0:
        return False
    budget = budget or FactorBudget()
    n = r.numerator * r.denominator
    # cheap pass first: trial division only
    quick = factorize(n, FactorBudget(budget.trial_bound, 0, budget.seed))
    verdict = _two_squares_from_parts(_parity_3mod4(quick.factors), quick.cofactor)
    if verdict is not None:
        return verdict
    rest = factorize(quick.cofactor, budget, trial_primes=[])
    merged = dict(quick.factors)
    for p, e in rest.factors.items():
        merged[p] = merged.get(p, 0) + e
    return _two_squares_from_parts(_parity_3mod4(merged), rest.cofactor)


def is_sum_of_two_squares(r, budget: FactorBudget | None = None) -> bool:
    verdict = two_squares_tristate(r, budget)
    if verdict is None:
        raise FactoringBudgetExceeded(f"cannot decide whether {r} is a sum of two squares")
    return verdict


# -- character criterion -----------------------------------------------------------

def default_S(seq: EdsSequence, chi: DirichletCharacter) -> set[int]:
    """Primes of 2 * disc * q(chi) * ord(chi), together with primes_T."""
    n = 2 * abs(seq.curve.disc) * chi.q * chi.order
    return set(factor_completely(n, seq.budget)) | primes_T(seq)


def _passes(chi, p, v) -> bool:
    order = value_order(chi, p)
    return order is not None and v % order == 0


def _char_is_one(chi, m) -> bool:
    return eval_char(chi, m).is_one


def brauer_vanishing_test(seq: EdsSequence, chi: DirichletCharacter, n: int,
                          S=None, budget: FactorBudget | None = None) -> TriState:
    """Local test at the primes where nP meets O, outside S.

    At such p the class vanishes locally iff ord(chi(p)) divides v_p(nP).
    Primes with v_p(nP) = 0 pass.
    """
    n = int(n)
    if n == 0:
        raise ValueError("nP = O is the ramification point itself")
    S = default_S(seq, chi) if S is None else set(S)
    fac = factor_beta(seq, n, budget)
    vals = dict(fac.factors)
    for p in primes_T(seq):
        vals[p] = vals.get(p, 0)
    for p, e in sorted(vals.items()):
        if p in S:
            continue
        v = e + vp_int(seq.e1, p) if seq.e1 % p == 0 else e
        if v and not _passes(chi, p, v):
            return TriState.NONZERO
    if fac.complete:
        return TriState.POSSIBLY_ZERO
    cof = fac.cofactor
    # cofactor primes lie outside S and T; if every one of them passed, chi(cof) = 1
    if all(cof % p for p in S) and math.gcd(cof, seq.e1) == 1 and not _char_is_one(chi, cof):
        return TriState.NONZERO
    return TriState.UNKNOWN


# -- witness search ------------------------------------------------------------------

@dataclass(frozen=True)
class Star2Witness:
    alpha: int
    branch: int
    period: int


def _nontrivial(v) -> bool:
    return not v.zero and v.exponent != 0


def find_star2_witness(seq: EdsSequence, chi: DirichletCharacter, alpha_max: int = 1000,
                       cap: int = 10**6):
    """First alpha coprime to the period meeting one of the three conditions.

    Branch 1 is preferred over the whole range before branches 2 and 3 are
    tried. Returns None when nothing is found up to alpha_max.
    """
    period = minimal_period_mod(seq, chi.q, cap).minimal_period
    alphas = [a for a in range(1, alpha_max + 1) if math.gcd(a, period) == 1]
    if chi.is_even:
        residues = dict(_abs_mod_even(seq, chi.q, alphas))
    else:
        residues = {a: abs(beta(seq, a)) % chi.q for a in alphas}
    for a in alphas:
        if _nontrivial(eval_char(chi, residues[a])):
            return Star2Witness(a, 1, period)
    branches = []
    if is_on_identity_component(seq.curve, seq.P):
        branches.append(2)
    if period % 4:
        branches.append(3)
    for branch in branches:
        for a in alphas:
            if _nontrivial(eval_char(chi, -residues[a])):
                return Star2Witness(a, branch, period)
    return None


def _abs_mod_even(seq, q, alphas):
    # chi(-1) = 1 makes the sign irrelevant: beta mod q is enough
    vals = beta_mod_range(seq, q, max(alphas) + 1) if alphas else []
    return [(a, vals[a]) for a in alphas]


# -- the conic bundle (x - x_1)(x - x_3) ------------------------------------------------

def conic_fiber_value(seq: EdsSequence, n: int) -> Fraction:
    """(x(nP) - x(P)) * (x(nP) - x(3P))."""
    c, P = seq.curve, seq.P
    Q = _mul(c, n, P)
    if Q.is_infinity:
        raise FiberDegenerate("nP = O")
    x3 = _mul(c, 3, P).x
    val = (Q.x - P.x) * (Q.x - x3)
    if val == 0:
        raise FiberDegenerate(f"{n}P meets a ramified fibre")
    return val


def _rational_two_torsion(c):
    """Rational roots of 4x^3 + b2 x^2 + 2 b4 x + b6, or None if not all three are."""
    roots = np.roots([4, c.b2, 2 * c.b4, c.b6])
    out = []
    for z in roots:
        if abs(z.imag) > 1e-9:
            return None
        cand = Fraction(round(z.real * 4), 4)
        if ((4 * cand + c.b2) * cand + 2 * c.b4) * cand + c.b6 == 0:
            out.append(cand)
    return out if len(set(out)) == 3 else None


def _halving_forces_1mod4(seq: EdsSequence):
    """Integers d such that every good odd prime p not dividing d with p | beta_m for
    some odd m is 1 mod 4, or None when no such certificate exists.

    p | beta_m with m odd makes the order of P mod p odd, so P is a double mod
    p; with full rational 2-torsion that forces every x(P) - e_i to be a square
    mod p. If -1 lies in the span of their square classes, p = 1 mod 4.
    """
    roots = _rational_two_torsion(seq.curve)
    if roots is None or seq.M != 1 or seq.e1 != 1:
        return None
    ds = [seq.P.x - e for e in roots]
    if 0 in ds:
        return None
    for mask in range(1, 8):
        prod = Fraction(-1)
        for i in range(3):
            if mask >> i & 1:
                prod *= ds[i]
        k = prod.numerator * prod.denominator
        if k > 0 and gmpy2.is_square(k):
            guard = 2 * abs(seq.curve.disc)
            for d in ds:
                guard *= abs(d.numerator) * d.denominator
            return guard
    return None


def conic_fiber_check(seq: EdsSequence, n: int, budget: FactorBudget | None = None) -> bool:
    """Whether the fibre of t0^2 + t1^2 = (x - x_1)(x - x_3) t2^2 over nP has a
    rational point, i.e. whether the value is a sum of two squares.

    The value equals beta_{n+1} beta_{n-1} beta_{n+3} beta_{n-3} / (beta_n^4 beta_3^2),
    so only odd-index terms need factoring. Leftover cofactors are settled by
    the halving argument of :func:`_halving_forces_1mod4` when it applies.
    """
    n = int(n)
    if n % 2:
        raise ValueError("the fibre check is defined for even n")
    val = conic_fiber_value(seq, n)
    if seq.M != 1 or seq.e1 != 1:
        return is_sum_of_two_squares(val, budget)
    idx = [n + 1, n - 1, n + 3, n - 3]
    b = [beta(seq, m) for m in idx]
    assert val == Fraction(b[0] * b[1] * b[2] * b[3], beta(seq, n) ** 4 * beta(seq, 3) ** 2)
    if val < 0:
        return False
    exps: dict[int, int] = {}
    cof = 1
    for m in idx:
        if abs(m) == 1:
            continue
        f = factor_beta(seq, m, budget)
        for p, e in f.factors.items():
            exps[p] = exps.get(p, 0) + e
        cof *= f.cofactor
    verdict = _two_squares_from_parts(_parity_3mod4(exps), cof)
    if verdict is not None:
        return verdict
    guard = _halving_forces_1mod4(seq)
    if guard is not None and math.gcd(cof, guard) == 1:
        return True
    raise FactoringBudgetExceeded(f"fibre value at n={n} left cofactor {cof}")


# -- primes feeding the sieve -------------------------------------------------------------

def find_sieve_primes(seq: EdsSequence, chi: DirichletCharacter, x: int,
                      budget: FactorBudget | None = None, alpha_max: int = 1000):
    """Pairs (l, p), l prime <= x, with p not dividing q and ord(chi(p)) not dividing v_p(beta_l)."""
    if find_star2_witness(seq, chi, alpha_max) is None:
        raise HypothesisNotMet("no witness alpha for this character")
    out = []
    for ell in primes_upto(x):
        f = factor_beta(seq, ell, budget)
        hit = None
        for p in sorted(f.factors):
            if chi.q % p and not _passes(chi, p, f.factors[p]):
                hit = p
                break
        if hit is not None:
            out.append((ell, hit))
        elif not f.complete:
            log.warning("beta_%d not fully factored; skipped", ell)
    return out
