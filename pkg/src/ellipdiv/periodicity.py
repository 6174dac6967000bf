"""Periods of beta_n modulo prime powers and arbitrary moduli."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .curve import _mul
from .eds import EdsSequence, beta, beta_mod_range
from .errors import BoundExceedsCap
from .numtheory import factor_completely, legendre
from .padic import ord_mod_pk, vp_point

__all__ = ["PeriodCertificate", "r_pk", "pi_pk", "simple_bound", "divisor_bound", "minimal_period_mod"]


@dataclass(frozen=True)
class PeriodCertificate:
    """Minimal period of beta_n mod N, certified on a window of length
    ``window_checked >= divisor_bound``. Any period divides the bound, so the
    window is enough to rule out every proper divisor."""

    modulus: int
    minimal_period: int
    divisor_bound: int
    window_checked: int


def _MP(seq: EdsSequence):
    return _mul(seq.curve, seq.M, seq.P)


def r_pk(seq: EdsSequence, p: int, k: int) -> int:
    """M * ord(MP mod p^(k + v_p(MP)))."""
    Q = _MP(seq)
    v = vp_point(seq.curve, Q, p)
    return seq.M * ord_mod_pk(seq.curve, Q, p, k + v)


def pi_pk(seq: EdsSequence, p: int, k: int) -> int:
    r = r_pk(seq, p, k)
    base = (p - 1) * p ** (k - 1) * r
    if p != 2:
        u = beta(seq, seq.M + r) * beta(seq, seq.M - r)
        if u % p and legendre(u, p) == 1:
            return base
    return 2 * base


def simple_bound(seq: EdsSequence, p: int, k: int) -> int:
    Q = _MP(seq)
    M = seq.M
    if vp_point(seq.curve, Q, p) == 0:
        return 2 * M * (p - 1) * p ** (2 * (k - 1)) * ord_mod_pk(seq.curve, Q, p, 1)
    return 2 * M * (p - 1) * p ** (2 * k - 1)


def divisor_bound(seq: EdsSequence, N: int) -> int:
    """lcm of pi(p^k) over the prime powers exactly dividing N."""
    out = 1
    for p, k in factor_completely(N).items():
        out = math.lcm(out, pi_pk(seq, p, k))
    return out


def minimal_period_mod(seq: EdsSequence, N: int, cap: int = 10**6) -> PeriodCertificate:
    N = int(N)
    if N < 1:
        raise ValueError("modulus must be positive")
    if N == 1:
        return PeriodCertificate(1, 1, 1, 1)
    bound = divisor_bound(seq, N)
    if bound > cap:
        raise BoundExceedsCap(bound, cap)
    vals = beta_mod_range(seq, N, 2 * bound)

    def is_period(d):
        return vals[d:d + bound] == vals[:bound]

    assert is_period(bound), f"{bound} is not a period of beta mod {N}"
    d = bound
    for ell in factor_completely(bound):
        while d % ell == 0 and is_period(d // ell):
            d //= ell
    return PeriodCertificate(N, d, bound, bound)
