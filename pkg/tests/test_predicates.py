import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import factorint

from ellipdiv.dirichlet import enumerate_characters, eval_char, parse_character
from ellipdiv.eds import beta, factor_beta
from ellipdiv.errors import FactoringBudgetExceeded, FiberDegenerate, HypothesisNotMet
from ellipdiv.numtheory import FactorBudget, is_prime
from ellipdiv.predicates import (TriState, brauer_vanishing_test, conic_solvable, default_S,
                                 conic_fiber_check, conic_fiber_value,
                                 find_sieve_primes, find_star2_witness, hilbert_symbol,
                                 is_sum_of_two_squares, two_squares_tristate)

from conftest import make

K4 = parse_character("kronecker:-4")


def _order3_nontrivial_at_2():
    return next(c for c in enumerate_characters(7)
                if c.order == 3 and not eval_char(c, 2).is_one)


# -- oracles ---------------------------------------------------------------------------

def _local_zero_brute(a, b, p):
    """Whether z^2 = a x^2 + b y^2 has a primitive zero modulo p^(2e+1).

    e bounds the valuation of the gradient at a primitive zero, so such a
    zero lifts by Hensel; conversely a p-adic zero reduces to one.
    """
    e = (1 if p == 2 else 0) + max(_v(a, p), _v(b, p))
    m = p ** (2 * e + 1)
    r = np.arange(m, dtype=np.int64)
    sq = r * r % m
    all_sq = np.zeros(m, dtype=bool)
    all_sq[sq] = True
    unit_sq = np.zeros(m, dtype=bool)
    unit_sq[sq[r % p != 0]] = True
    rhs = (a * sq[:, None] + b * sq[None, :]) % m
    both_div = (r[:, None] % p == 0) & (r[None, :] % p == 0)
    ok = np.where(both_div, unit_sq[rhs], all_sq[rhs])
    return bool(ok.any())


def _v(n, p):
    n, k = abs(n), 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _conic_brute(a, b, c, bound=200):
    xs = np.arange(-bound, bound + 1, dtype=np.int64)
    val = -(a * xs[:, None] ** 2 + b * xs[None, :] ** 2)
    if c < 0:
        val, c = -val, -c
    hit = (val % c == 0) & (val >= 0)
    w = val[hit] // c
    z = np.round(np.sqrt(w.astype(float))).astype(np.int64)
    nontrivial = (w > 0) | (np.abs(xs[:, None]) + np.abs(xs[None, :]) > 0)[hit]
    return bool(((z * z == w) & nontrivial).any())


def _legendre_criterion(a, b, c):
    """Legendre's theorem for squarefree, pairwise coprime a, b, c."""
    if (a > 0) == (b > 0) == (c > 0):
        return False

    def qr(n, m):
        m = abs(m)
        return m == 1 or any((t * t - n) % m == 0 for t in range(m))
    return qr(-b * c, a) and qr(-c * a, b) and qr(-a * b, c)


def _int_two_squares(n):
    return any(math.isqrt(n - x * x) ** 2 == n - x * x for x in range(math.isqrt(n) + 1))


def _squarefree(n):
    return n != 0 and all(e == 1 for e in factorint(abs(n)).values())


# -- Hilbert symbols ------------------------------------------------------------------

def test_hilbert_examples():
    assert hilbert_symbol(-1, -1, "real") == -1
    assert hilbert_symbol(-1, -1, 2) == -1
    assert not _local_zero_brute(-1, -1, 2)
    for b in (2, -3, Fraction(5, 7), 12):
        assert all(hilbert_symbol(1, b, v) == 1 for v in ("real", 2, 3, 5, 7))
    assert hilbert_symbol(-1, 3, 3) == -1
    assert hilbert_symbol(5, 3, 3) == -1


@settings(max_examples=150)
@given(st.integers(-30, 30).filter(lambda n: n != 0), st.integers(-30, 30).filter(lambda n: n != 0),
       st.sampled_from([2, 3, 5]))
def test_hilbert_against_local_search(a, b, p):
    assert (hilbert_symbol(a, b, p) == 1) == _local_zero_brute(a, b, p)


def test_hilbert_product_formula():
    rng = random.Random(20240611)
    for _ in range(1000):
        a = rng.choice([-1, 1]) * rng.randint(1, 10**4)
        b = rng.choice([-1, 1]) * rng.randint(1, 10**4)
        places = ["real"] + sorted(factorint(2 * abs(a) * abs(b)))
        prod = 1
        for v in places:
            prod *= hilbert_symbol(a, b, v)
        assert prod == 1, (a, b)


@given(st.integers(-10**4, 10**4).filter(bool), st.integers(-10**4, 10**4).filter(bool),
       st.integers(-10**4, 10**4).filter(bool), st.sampled_from(["real", 2, 3, 5, 7, 11]))
def test_hilbert_bilinear_symmetric(a, b, c, v):
    assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
    assert hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v)
    assert hilbert_symbol(a, -a, v) == 1
    assert hilbert_symbol(a * 49, b, v) == hilbert_symbol(a, b, v)


# -- conics ------------------------------------------------------------------------------

def test_conic_examples():
    assert conic_solvable(1, 1, -5)
    assert not conic_solvable(1, 1, -3)
    assert not conic_solvable(1, 1, 1)
    assert conic_solvable(Fraction(1, 4), 1, Fraction(-5, 9))
    with pytest.raises(ValueError):
        conic_solvable(1, 0, -1)


coef = st.integers(-20, 20).filter(lambda n: n != 0)


@settings(max_examples=80)
@given(coef, coef, coef)
def test_conic_one_sided_brute_force(a, b, c):
    if _conic_brute(a, b, c):
        assert conic_solvable(a, b, c)


@settings(max_examples=200)
@given(coef, coef, coef)
def test_conic_legendre(a, b, c):
    if not all(map(_squarefree, (a, b, c))):
        return
    if math.gcd(a, b) * math.gcd(b, c) * math.gcd(a, c) != 1:
        return
    assert conic_solvable(a, b, c) == _legendre_criterion(a, b, c)


def test_conic_brute_force_finds_solutions():
    # the oracle itself is not vacuous
    assert _conic_brute(1, 1, -5) and _conic_brute(3, -5, 2) and not _conic_brute(1, 1, 1)


# -- sums of two squares -------------------------------------------------------------------

def test_two_squares_examples():
    assert is_sum_of_two_squares(Fraction(5, 9))
    assert not is_sum_of_two_squares(Fraction(-5, 8))
    assert not is_sum_of_two_squares(Fraction(21, 4))
    assert is_sum_of_two_squares(0)


def test_two_squares_brute_force():
    rng = random.Random(7)
    for _ in range(1000):
        r = Fraction(rng.randint(-50, 1000), rng.randint(1, 50))
        expected = r >= 0 and _int_two_squares(r.numerator * r.denominator)
        assert is_sum_of_two_squares(r) == expected, r


def test_two_squares_conic_equivalence():
    rng = random.Random(11)
    for _ in range(1000):
        c = Fraction(rng.randint(-300, 300) or 1, rng.randint(1, 40))
        assert is_sum_of_two_squares(c) == conic_solvable(1, 1, -c), c


def test_two_squares_unknown_under_tiny_budget():
    p, q = 1000000009, 1000000021
    assert p % 4 == 1 and q % 4 == 1 and is_prime(p) and is_prime(q)
    tiny = FactorBudget(trial_bound=100, rho_iterations=0)
    assert two_squares_tristate(p * q, tiny) is None
    with pytest.raises(FactoringBudgetExceeded):
        is_sum_of_two_squares(p * q, tiny)
    assert two_squares_tristate(p * q) is True
    # a cofactor = 3 mod 4 decides without factoring
    assert two_squares_tristate(1000000007 * 1000000009, tiny) is False


# -- character criterion -----------------------------------------------------------------

def test_brauer_examples(s37):
    assert brauer_vanishing_test(s37, K4, 7) is TriState.NONZERO
    assert brauer_vanishing_test(s37, K4, 1) is TriState.POSSIBLY_ZERO
    assert beta(s37, 15) == -314
    assert brauer_vanishing_test(s37, K4, 15) is TriState.POSSIBLY_ZERO
    with pytest.raises(ValueError):
        brauer_vanishing_test(s37, K4, 0)


def test_brauer_default_S(s37):
    S = default_S(s37, K4)
    assert {2, 37} <= S
    # with 3 forced into S, the n = 7 obstruction disappears
    assert brauer_vanishing_test(s37, K4, 7, S=S | {3}) is TriState.POSSIBLY_ZERO


def test_brauer_unknown_is_honest():
    # fresh sequence: complete factorisations cached elsewhere would serve any budget
    s37 = make("37a")
    tiny = FactorBudget(trial_bound=10, rho_iterations=0)
    got = [brauer_vanishing_test(s37, K4, n, budget=tiny) for n in range(20, 60)]
    full = [brauer_vanishing_test(s37, K4, n) for n in range(20, 60)]
    assert TriState.UNKNOWN in got
    for g, f in zip(got, full):
        # a smaller budget may lose a verdict but never flip one
        if TriState.UNKNOWN not in (g, f):
            assert g is f
        if f is TriState.UNKNOWN:
            assert g is TriState.UNKNOWN


def test_brauer_agrees_with_sieve(s37):
    listed = {ell for ell, _ in find_sieve_primes(s37, K4, 60)}
    checked = 0
    for n in range(2, 61):
        # the sieve needs a named prime, so only fully factored terms count
        if not is_prime(n) or not factor_beta(s37, n).complete:
            continue
        if brauer_vanishing_test(s37, K4, n) is TriState.NONZERO:
            assert n in listed
            checked += 1
    assert checked >= 4


def test_brauer_on_split_even_multiples(ssplit):
    # only n = +-2 survive the local test; every other even n has a prime
    # = 3 mod 4 to an odd power outside S
    got = {n: brauer_vanishing_test(ssplit, K4, n) for n in range(-20, 21, 2) if n}
    assert {n for n, v in got.items() if v is TriState.POSSIBLY_ZERO} == {-2, 2}
    assert all(v is TriState.NONZERO for n, v in got.items() if abs(n) > 2)


# -- witnesses ------------------------------------------------------------------------------

def test_witness_37a(s37):
    w = find_star2_witness(s37, K4)
    assert (w.alpha, w.branch, w.period) == (7, 1, 10)
    w = find_star2_witness(s37, _order3_nontrivial_at_2())
    assert (w.alpha, w.branch, w.period) == (5, 1, 54)
    assert math.gcd(w.alpha, w.period) == 1


def test_witness_absent_on_split(ssplit):
    assert find_star2_witness(ssplit, K4, alpha_max=1000) is None


@pytest.mark.parametrize("q", [5, 7, 11, 13])
def test_witness_is_genuine(s37, q):
    for chi in enumerate_characters(q, "even"):
        if chi.is_principal:
            continue
        w = find_star2_witness(s37, chi, alpha_max=300)
        if w is None:
            continue
        b = abs(beta(s37, w.alpha))
        v = eval_char(chi, b if w.branch == 1 else -b)
        assert not v.zero and v.exponent != 0
        assert math.gcd(w.alpha, w.period) == 1


# -- the conic bundle ----------------------------------------------------------------------

def test_fiber_even_multiples(ssplit):
    assert all(conic_fiber_check(ssplit, n) for n in range(-20, 21, 2) if n)


def test_fiber_certificate_matches_factoring(ssplit):
    decided = 0
    for n in range(2, 11, 2):
        direct = two_squares_tristate(conic_fiber_value(ssplit, n))
        if direct is not None:
            assert conic_fiber_check(ssplit, n) == direct
            decided += 1
    assert decided >= 3


def test_fiber_value_formula(ssplit):
    n = 4
    b = [beta(ssplit, m) for m in (n + 1, n - 1, n + 3, n - 3)]
    assert conic_fiber_value(ssplit, n) == Fraction(
        math.prod(b), beta(ssplit, n) ** 4 * beta(ssplit, 3) ** 2)


def test_fiber_preconditions(ssplit):
    with pytest.raises(ValueError):
        conic_fiber_check(ssplit, 1)
    with pytest.raises(FiberDegenerate):
        conic_fiber_check(ssplit, 0)


def test_fiber_generic_curve(s37):
    # without the halving certificate the check reduces to plain factoring
    for n in (2, 4, 6):
        assert conic_fiber_check(s37, n) == is_sum_of_two_squares(
            conic_fiber_value(s37, n))


# -- sieve primes --------------------------------------------------------------------------

def test_sieve_primes(s37):
    pairs = find_sieve_primes(s37, K4, 50)
    assert (7, 3) in pairs and (11, 23) in pairs
    assert all(ell != 2 for ell, _ in pairs)
    for ell, p in pairs:
        assert p % 4 == 3 and factorint(abs(beta(s37, ell)))[p] % 2 == 1


def test_sieve_requires_witness(ssplit):
    with pytest.raises(HypothesisNotMet):
        find_sieve_primes(ssplit, K4, 20, alpha_max=200)
