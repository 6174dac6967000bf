"""The signed denominator sequence beta_n attached to (E, P).

For ``nP = (a_n/e_n^2, b_n/e_n^3)`` in lowest terms,
``beta_n = sign(psi_n(P)) * e_n / e_1`` and ``beta_0 = 0``.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

import gmpy2

from .curve import (
    Curve,
    Point,
    _check,
    _initial_division_values,
    _mul,
    _scaled_coordinates,
    extend_division_values,
    reduction_data,
)
from .errors import (
    ComponentOrderSearchExceeded,
    HypothesisNotMet,
    NonIntegralBeta,
    TorsionPoint,
)
from .numtheory import (
    FactorBudget,
    PartialFactorization,
    factor_completely,
    factorize,
    primes_upto,
)

__all__ = [
    "EdsSequence",
    "beta",
    "compute_M",
    "verzobio_identity_check",
    "gcd_check",
    "beta_mod",
    "beta_mod_range",
    "modular_path",
    "factor_beta",
    "primes_T",
    "symmetry_law_holds",
]


class EdsSequence:
    """Lazily extended, thread-safe cache of beta_n for a fixed (E, P).

    Reads may race; every thread observes the same values because the cache
    is only ever appended to under a lock.
    """

    def __init__(self, curve: Curve, P: Point, budget: FactorBudget | None = None):
        _check(curve, P)
        if P.is_infinity:
            raise TorsionPoint("the sequence of O is undefined")
        self.curve = curve
        self.P = P
        self.budget = budget or FactorBudget()
        self._a, self._b, self.e1 = _scaled_coordinates(P)
        self._W = _initial_division_values(curve, self._a, self._b, self.e1)
        self._beta: list[int] = [0, 1]
        self._M: int | None = None
        self._lock = threading.Lock()
        self._mod_cache: dict[int, list] = {}
        self._factor_cache: dict = {}
        self._trial_primes = None

    def __repr__(self):
        return f"EdsSequence({self.curve}, {self.P})"

    # -- exact values ------------------------------------------------------

    @property
    def M(self) -> int:
        if self._M is None:
            self._M = compute_M(self)
        return self._M

    def _direct(self) -> bool:
        # integral P of everywhere good reduction: psi_n(P) is already e_n
        return self.e1 == 1 and self.M == 1

    def _beta_from_W(self, n: int) -> int:
        W = self._W
        Wn = W[n]
        if Wn == 0:
            raise TorsionPoint(f"{n}P = O")
        if self._direct():
            return int(Wn)
        e = self.e1
        den = (e * Wn) ** 2
        num = self._a * Wn * Wn - W[n - 1] * W[n + 1]
        g = gmpy2.gcd(num, den)
        en2 = den // g
        en, exact = gmpy2.iroot(en2, 2)
        assert exact, "reduced denominator of x(nP) is not a square"
        q, r = gmpy2.f_divmod(en, e)
        if r:
            raise NonIntegralBeta(f"e_1 = {e} does not divide e_{n} = {en}")
        return int(q) if Wn > 0 else -int(q)

    def ensure(self, n: int) -> None:
        n = abs(int(n))
        if n < len(self._beta):
            return
        with self._lock:
            if n < len(self._beta):
                return
            extend_division_values(self._W, n + 1)
            new = [self._beta_from_W(m) for m in range(len(self._beta), n + 1)]
            self._beta.extend(new)

    def __getitem__(self, n: int) -> int:
        return beta(self, n)

    def values(self, n_max: int) -> list[int]:
        self.ensure(n_max)
        return self._beta[: n_max + 1]

    def psi_sign(self, n: int) -> int:
        """sign(psi_n(P)) for n != 0."""
        n = int(n)
        if n < 0:
            return -self.psi_sign(-n)
        self.ensure(n)
        return 1 if self._W[n] > 0 else -1

    def tamper(self, n: int, value: int) -> None:
        """Overwrite a cached value (fault-injection for self-checks)."""
        self.ensure(n)
        self._beta[n] = value


def beta(seq: EdsSequence, n: int) -> int:
    n = int(n)
    if n < 0:
        return -beta(seq, -n)
    seq.ensure(n)
    return seq._beta[n]


def compute_M(seq: EdsSequence) -> int:
    """Least M with MP of nonsingular reduction at every prime."""
    c, P = seq.curve, seq.P
    M = 1
    for p, e in sorted(factor_completely(c.disc, seq.budget).items()):
        bound = max(4, e + 1)
        Q = P
        for m in range(1, bound + 1):
            if Q.is_infinity or reduction_data(c, Q, p).nonsingular:
                M = math.lcm(M, m)
                break
            Q = _mul(c, m + 1, P)
        else:
            raise ComponentOrderSearchExceeded(f"no multiple <= {bound} of {P} is nonsingular at {p}")
    return M


def verzobio_identity_check(seq: EdsSequence, n: int, m: int, r: int) -> bool:
    M = seq.M
    if sum(v % M == 0 for v in (n, m, r)) < 2:
        raise HypothesisNotMet(f"fewer than two of {(n, m, r)} are multiples of M = {M}")
    b = lambda k: beta(seq, k)
    lhs = b(n + m) * b(n - m) * b(r) ** 2
    # the usual elliptic net sign convention; the other order negates the right side
    rhs = b(n + r) * b(n - r) * b(m) ** 2 - b(m + r) * b(m - r) * b(n) ** 2
    return lhs == rhs


def gcd_check(seq: EdsSequence, m: int, n: int) -> bool:
    if m == 0 or n == 0:
        raise ValueError("indices must be nonzero")
    return math.gcd(beta(seq, m), beta(seq, n)) == abs(beta(seq, math.gcd(m, n)))


# -- modular values ---------------------------------------------------------

def _fast_path(seq: EdsSequence, N: int) -> bool:
    return (seq.M == 1 and seq.e1 == 1
            and math.gcd(int(seq._W[2]) * seq.curve.disc, N) == 1)


def modular_path(seq: EdsSequence, N: int) -> str:
    """'recurrence' when beta_n mod N can be generated directly, else 'exact'."""
    return "recurrence" if N == 1 or _fast_path(seq, N) else "exact"


def beta_mod_range(seq: EdsSequence, N: int, count: int) -> list[int]:
    """[beta_0 mod N, ..., beta_{count-1} mod N]."""
    N = int(N)
    if N < 1:
        raise ValueError("modulus must be positive")
    if N == 1:
        return [0] * count
    if not _fast_path(seq, N):
        seq.ensure(count)
        return [b % N for b in seq._beta[:count]]
    with seq._lock:
        W = seq._mod_cache.get(N)
        if W is None:
            W = [int(w) % N for w in seq._W[:5]]
            seq._mod_cache[N] = W
        if len(W) < count + 2:
            extend_division_values(W, count + 2, modulus=N, inv2=pow(W[2], -1, N))
        return W[:count]


def beta_mod(seq: EdsSequence, n: int, N: int) -> int:
    n = int(n)
    if n < 0:
        return (-beta_mod(seq, -n, N)) % N
    return beta_mod_range(seq, N, n + 1)[n]


# -- factorisation ----------------------------------------------------------

def _trial_primes(seq):
    if seq._trial_primes is None:
        seq._trial_primes = primes_upto(seq.budget.trial_bound)
    return seq._trial_primes


def factor_beta(seq: EdsSequence, n: int, budget: FactorBudget | None = None) -> PartialFactorization:
    """Factor |beta_n|, stripping the primes of beta_d for d | n first."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("beta_0 = 0 has no factorisation")
    budget = budget or seq.budget
    # complete factorisations serve every budget; partial ones only their own
    cached = seq._factor_cache.get(n) or seq._factor_cache.get((n, budget))
    if cached is not None:
        return cached
    value = abs(beta(seq, n))
    out = PartialFactorization(value)
    rem = gmpy2.mpz(value)
    stuck = gmpy2.mpz(1)
    for q in sorted(factor_completely(n)) if n > 1 else []:
        sub = factor_beta(seq, n // q, budget)
        for p in sub.factors:
            if p not in out.factors and rem % p == 0:
                rem, e = gmpy2.remove(rem, p)
                out.factors[p] = int(e)
        if sub.cofactor > 1:
            g = gmpy2.gcd(rem, sub.cofactor)
            while g > 1:
                rem //= g
                stuck *= g
                g = gmpy2.gcd(rem, g)
    trial = _trial_primes(seq) if budget.trial_bound == seq.budget.trial_bound else None
    rest = factorize(int(rem), budget, trial_primes=trial)
    for p, e in rest.factors.items():
        out.factors[p] = out.factors.get(p, 0) + e
    cof = int(stuck) * rest.cofactor
    if cof > 1 and stuck > 1:
        # the borrowed pieces may still contain primes already listed
        for p in list(out.factors):
            c2, e = gmpy2.remove(gmpy2.mpz(cof), p)
            if e:
                cof = int(c2)
                out.factors[p] += int(e)
    out.cofactor = cof
    out.check()
    seq._factor_cache[n if out.complete else (n, budget)] = out
    return out


def primes_T(seq: EdsSequence) -> set[int]:
    """Primes p with v_p(P) > 0, i.e. the primes dividing e_1."""
    return set(factor_completely(seq.e1, seq.budget)) if seq.e1 > 1 else set()


# -- symmetry law -------------------------------------------------------------

def symmetry_law_holds(seq: EdsSequence, n: int, r: int, p: int, k: int, ells) -> bool:
    """Check beta_{n+l r} == C^(l(l-1)/2) (beta_{n+r}/beta_n)^l beta_n mod p^k.

    Requires M | r, p^k | beta_r / gcd(beta_r, beta_M) and p^k not dividing beta_n.
    """
    M = seq.M
    if r % M:
        raise HypothesisNotMet(f"M = {M} does not divide r = {r}")
    pk = p**k
    br, bM, bn = beta(seq, r), beta(seq, M), beta(seq, n)
    if (br // math.gcd(br, bM)) % pk:
        raise HypothesisNotMet(f"{pk} does not divide beta_r/gcd(beta_r, beta_M)")
    if bn % pk == 0:
        raise HypothesisNotMet(f"{pk} divides beta_n")
    C = Fraction(beta(seq, M + r) * beta(seq, M - r), bM * bM)
    ratio = Fraction(beta(seq, n + r), bn)

    def red(f: Fraction) -> int:
        return f.numerator * pow(f.denominator, -1, pk) % pk

    Cm, Rm = red(C), red(ratio)
    for ell in ells:
        expect = pow(Cm, ell * (ell - 1) // 2, pk) * pow(Rm, ell, pk) * bn % pk
        if beta(seq, n + ell * r) % pk != expect:
            return False
    return True
