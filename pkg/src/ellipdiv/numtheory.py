"""Integer plumbing: valuations, prime lists, budgeted factorisation."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import gmpy2
import numpy as np

from .errors import FactoringBudgetExceeded, ZeroInput

__all__ = [
    "FactorBudget",
    "PartialFactorization",
    "factorize",
    "factor_completely",
    "is_prime",
    "primes_upto",
    "vp_int",
    "vp_rational",
    "legendre",
]


def vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ZeroInput("valuation of 0")
    return int(gmpy2.remove(gmpy2.mpz(n), p)[1])


def vp_rational(r, p: int) -> int:
    """Exact p-adic valuation of a nonzero rational (may be negative)."""
    r = Fraction(r)
    if r == 0:
        raise ZeroInput("valuation of 0")
    return vp_int(r.numerator, p) - vp_int(r.denominator, p)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return bool(gmpy2.is_prime(n, 40))


@lru_cache(maxsize=8)
def _sieve(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = False
    return np.flatnonzero(flags)


def primes_upto(limit: int) -> list[int]:
    if limit < 2:
        return []
    return [int(p) for p in _sieve(int(limit))]


def legendre(a: int, p: int) -> int:
    """Legendre symbol for an odd prime p."""
    return int(gmpy2.legendre(a % p, p))


@dataclass(frozen=True)
class FactorBudget:
    trial_bound: int = 10**5
    rho_iterations: int = 10**6
    seed: int = 1


@dataclass
class PartialFactorization:
    value: int
    factors: dict[int, int] = field(default_factory=dict)
    cofactor: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def check(self) -> None:
        prod = self.cofactor
        for p, e in self.factors.items():
            prod *= p**e
        assert prod == self.value, "factorisation does not multiply back"

    def merge(self, other: "PartialFactorization", power: int = 1) -> None:
        for p, e in other.factors.items():
            self.factors[p] = self.factors.get(p, 0) + e * power


def _brent(n, budget_steps, rng):
    """Pollard-Brent rho. Returns (factor or None, steps used)."""
    n = gmpy2.mpz(n)
    y = gmpy2.mpz(rng.randrange(1, n - 1))
    c = gmpy2.mpz(rng.randrange(1, n - 1))
    m = 128
    g = r = q = gmpy2.mpz(1)
    steps = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gmpy2.gcd(q, n)
            k += m
        steps += r
        r *= 2
        if steps > budget_steps:
            return None, steps
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = gmpy2.gcd(abs(x - ys), n)
            if g > 1:
                break
    if g == n:
        return None, steps
    return int(g), steps


def _split_square(n, pending):
    root, exact = gmpy2.iroot(gmpy2.mpz(n), 2)
    if exact and n > 1:
        pending.extend([int(root), int(root)])
        return True
    return False


def factorize(n: int, budget: FactorBudget | None = None,
              trial_primes: list[int] | None = None) -> PartialFactorization:
    """Trial division, then Brent rho within the iteration budget.

    Composite pieces that resist rho are multiplied into ``cofactor``.
    """
    budget = budget or FactorBudget()
    n = abs(int(n))
    if n == 0:
        raise ZeroInput("cannot factor 0")
    out = PartialFactorization(n)
    rem = gmpy2.mpz(n)
    for p in trial_primes if trial_primes is not None else primes_upto(budget.trial_bound):
        if rem == 1:
            break
        if rem % p == 0:
            rem, e = gmpy2.remove(rem, p)
            out.factors[p] = out.factors.get(p, 0) + int(e)
        if p * p > rem:
            break
    if rem == 1:
        return out
    rng = random.Random(budget.seed)
    pending = [int(rem)]
    stuck = 1
    while pending:
        m = pending.pop()
        if m == 1:
            continue
        if is_prime(m):
            out.factors[m] = out.factors.get(m, 0) + 1
            continue
        if _split_square(m, pending):
            continue
        left = budget.rho_iterations
        d = None
        while left > 0 and d is None:
            d, used = _brent(m, left, rng)
            left -= used
        if d is None:
            stuck *= m
        else:
            pending.extend([d, m // d])
    # a prime split out of one piece may still hide in a stuck one
    for p in out.factors:
        if stuck % p == 0:
            stuck, e = gmpy2.remove(gmpy2.mpz(stuck), p)
            stuck = int(stuck)
            out.factors[p] += int(e)
    out.cofactor = stuck
    out.check()
    return out


def factor_completely(n: int, budget: FactorBudget | None = None) -> dict[int, int]:
    f = factorize(n, budget)
    if not f.complete:
        raise FactoringBudgetExceeded(f"could not factor {n}: cofactor {f.cofactor}")
    return f.factors
