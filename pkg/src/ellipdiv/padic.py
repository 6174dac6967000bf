"""Depth of points in the filtration E_0(Q_p) > E_1(Q_p) > ... and orders
modulo prime powers.

``vp_point`` returns ``math.inf`` for the point at infinity; callers can
compare it against any integer depth.
"""

from __future__ import annotations

import math
import warnings

from .curve import Curve, Point, _check, _mul, ord_mod_p, reduction_data
from .errors import NotInKernelOfReduction, OddNegativeXValuation, SingularReduction
from .numtheory import vp_int, vp_rational

__all__ = ["vp_rational", "vp_point", "ord_mod_pk", "mul_valuation_pair", "COST_WARNING_DIGITS"]

COST_WARNING_DIGITS = 10**6


def vp_point(c: Curve, P: Point, p: int):
    """max(0, -v_p(x(P))/2), or inf for O."""
    _check(c, P)
    if P.is_infinity:
        return math.inf
    if P.x == 0:
        return 0
    v = vp_rational(P.x, p)
    if v >= 0:
        return 0
    if v % 2:
        raise OddNegativeXValuation(f"v_{p}(x) = {v} is odd; model is not integral at {p}")
    return -v // 2


def _digits(P: Point) -> int:
    if P.is_infinity:
        return 0
    return max(P.x.numerator.bit_length(), P.x.denominator.bit_length()) * 30103 // 100000


def ord_mod_pk(c: Curve, P: Point, p: int, k: int) -> int:
    """Least m >= 1 with v_p(mP) >= k.

    Starts from the order of the reduction and multiplies by p, re-evaluating
    the valuation exactly each time; the p = 2 jumps are therefore handled
    without assuming one extra level per multiplication.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if not reduction_data(c, P, p).nonsingular:
        raise SingularReduction(f"{P} is not in E_0(Q_{p})")
    if vp_point(c, P, p) >= k:
        return 1
    m = ord_mod_p(c, P, p)
    Q = _mul(c, m, P)
    while vp_point(c, Q, p) < k:
        Q = _mul(c, p, Q)
        m *= p
        if _digits(Q) > COST_WARNING_DIGITS:
            warnings.warn(f"ord_mod_pk: coordinates of {m}P exceed {COST_WARNING_DIGITS} digits",
                          RuntimeWarning, stacklevel=2)
    return m


def mul_valuation_pair(c: Curve, P: Point, p: int, n: int):
    """(v_p(nP), v_p(P) + v_p(n)) for P in E_1(Q_p)."""
    n = int(n)
    if n == 0:
        raise ValueError("n must be nonzero")
    v = vp_point(c, P, p)
    if v < 1:
        raise NotInKernelOfReduction(f"v_{p}(P) = 0")
    return vp_point(c, _mul(c, n, P), p), v + vp_int(n, p)
