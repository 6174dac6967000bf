"""Exact arithmetic on integral Weierstrass curves over Q.

Points carry exact :class:`fractions.Fraction` coordinates.  Division
polynomial values are computed through the integer sequence
``W_n = psi_n(P) * e**(n*n - 1)`` where ``x(P) = a/e**2``; the sequence
obeys the same recurrences as ``psi_n`` and stays in Z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
import numpy as np

from .errors import (
    BadReductionPrime,
    PointNotOnCurve,
    SingularCurve,
    SingularReduction,
    TorsionPoint,
)
from .numtheory import factor_completely, is_prime, vp_rational

__all__ = [
    "Curve",
    "Point",
    "INFINITY",
    "ReducedPointData",
    "new_curve",
    "add",
    "neg",
    "mul",
    "division_values",
    "division_poly_eval",
    "canonical_height",
    "naive_log_height",
    "is_on_identity_component",
    "largest_real_root",
    "count_points_mod_p",
    "reduction_data",
    "ord_mod_p",
    "parse_curve",
    "parse_point",
]


@dataclass(frozen=True)
class Curve:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    b2: int = field(init=False)
    b4: int = field(init=False)
    b6: int = field(init=False)
    b8: int = field(init=False)
    disc: int = field(init=False)

    def __post_init__(self):
        a1, a2, a3, a4, a6 = (int(v) for v in (self.a1, self.a2, self.a3, self.a4, self.a6))
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        assert 4 * b8 == b2 * b6 - b4 * b4
        disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        if disc == 0:
            raise SingularCurve(f"discriminant vanishes for {self.coefficients()}")
        for name, val in dict(b2=b2, b4=b4, b6=b6, b8=b8, disc=disc).items():
            object.__setattr__(self, name, val)

    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def contains(self, P: "Point") -> bool:
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = x**3 + self.a2 * x * x + self.a4 * x + self.a6
        return lhs == rhs

    def literal(self) -> str:
        return ",".join(str(a) for a in self.coefficients())

    def __str__(self):
        return f"[{self.literal()}]"


def new_curve(a1, a2, a3, a4, a6) -> Curve:
    return Curve(a1, a2, a3, a4, a6)


@dataclass(frozen=True)
class Point:
    x: Fraction | None = None
    y: Fraction | None = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("affine point needs both coordinates")
        if self.x is not None:
            object.__setattr__(self, "x", Fraction(self.x))
            object.__setattr__(self, "y", Fraction(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def literal(self) -> str:
        if self.is_infinity:
            return "O"
        return f"{self.x},{self.y}"

    def __str__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = Point()


def _check(c: Curve, *pts: Point) -> None:
    for P in pts:
        if not c.contains(P):
            raise PointNotOnCurve(f"{P} is not on {c}")


def neg(c: Curve, P: Point) -> Point:
    if P.is_infinity:
        return P
    return Point(P.x, -P.y - c.a1 * P.x - c.a3)


def _add(c: Curve, P: Point, Q: Point) -> Point:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 + y2 + c.a1 * x2 + c.a3 == 0:
            return INFINITY
        lam = (3 * x1 * x1 + 2 * c.a2 * x1 + c.a4 - c.a1 * y1) / (2 * y1 + c.a1 * x1 + c.a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + c.a1 * lam - c.a2 - x1 - x2
    y3 = -(lam + c.a1) * x3 - nu - c.a3
    return Point(x3, y3)


def add(c: Curve, P: Point, Q: Point) -> Point:
    _check(c, P, Q)
    return _add(c, P, Q)


def _mul(c: Curve, n: int, P: Point) -> Point:
    if n < 0:
        return neg(c, _mul(c, -n, P))
    result = INFINITY
    base = P
    while n:
        if n & 1:
            result = _add(c, result, base)
        n >>= 1
        if n:
            base = _add(c, base, base)
    return result


def mul(c: Curve, n: int, P: Point) -> Point:
    _check(c, P)
    return _mul(c, int(n), P)


# -- division polynomials ---------------------------------------------------

def _scaled_coordinates(P: Point):
    """(a, b, e) with x = a/e^2, y = b/e^3, e > 0."""
    x, y = P.x, P.y
    e2 = x.denominator
    e = math.isqrt(e2)
    if e * e != e2 or y.denominator != e**3:
        raise PointNotOnCurve(f"{P} does not have the shape (a/e^2, b/e^3)")
    return x.numerator, y.numerator, e


def _initial_division_values(c: Curve, a, b, e):
    a, b, e = gmpy2.mpz(a), gmpy2.mpz(b), gmpy2.mpz(e)
    e2 = e * e
    W2 = 2 * b + c.a1 * a * e + c.a3 * e**3
    W3 = (3 * a**4 + c.b2 * a**3 * e2 + 3 * c.b4 * a * a * e2**2
          + 3 * c.b6 * a * e2**3 + c.b8 * e2**4)
    # constant term b4*b8 - b6^2 (the standard formula)
    W4 = W2 * (2 * a**6 + c.b2 * a**5 * e2 + 5 * c.b4 * a**4 * e2**2
               + 10 * c.b6 * a**3 * e2**3 + 10 * c.b8 * a * a * e2**4
               + (c.b2 * c.b8 - c.b4 * c.b6) * a * e2**5
               + (c.b4 * c.b8 - c.b6 * c.b6) * e2**6)
    return [gmpy2.mpz(0), gmpy2.mpz(1), W2, W3, W4]


def extend_division_values(W: list, n_max: int, modulus: int | None = None,
                           inv2: int | None = None) -> None:
    """Extend ``W`` in place up to index ``n_max`` using the duplication
    recurrences.

    With ``modulus`` set, values are reduced and the division by W_2 uses
    the supplied inverse ``inv2``.
    """
    W2 = W[2]
    for n in range(len(W), n_max + 1):
        k = n // 2
        if n & 1:
            v = W[k + 2] * W[k] ** 3 - W[k + 1] ** 3 * W[k - 1]
        else:
            num = W[k] * (W[k + 2] * W[k - 1] ** 2 - W[k - 2] * W[k + 1] ** 2)
            if modulus is not None:
                v = num * inv2
            else:
                if W2 == 0:
                    raise TorsionPoint("psi_2(P) = 0: P is 2-torsion")
                v, r = gmpy2.f_divmod(num, W2)
                assert r == 0, "non-exact division in the even recurrence"
        W.append(v % modulus if modulus is not None else v)


def division_values(c: Curve, P: Point, n_max: int) -> list[int]:
    """Return [W_0, ..., W_{n_max}] with W_n = psi_n(P) e^(n^2-1) in Z."""
    _check(c, P)
    if P.is_infinity:
        raise TorsionPoint("division values at O")
    W = _initial_division_values(c, *_scaled_coordinates(P))
    extend_division_values(W, n_max)
    return [int(w) for w in W[: n_max + 1]]


def division_poly_eval(c: Curve, n: int, P: Point) -> Fraction:
    """psi_n(P) as an exact rational; psi_{-n} = -psi_n."""
    _check(c, P)
    n = int(n)
    if n < 0:
        return -division_poly_eval(c, -n, P)
    if n == 0:
        return Fraction(0)
    if n == 1:
        return Fraction(1)
    W = division_values(c, P, n)
    e = _scaled_coordinates(P)[2]
    return Fraction(W[n], e ** (n * n - 1))


# -- heights ----------------------------------------------------------------

def naive_log_height(r: Fraction) -> float:
    r = Fraction(r)
    return math.log(max(abs(r.numerator), r.denominator))


def _torsion_check(c: Curve, P: Point, bound: int = 16) -> None:
    Q = P
    for n in range(1, bound + 1):
        if Q.is_infinity:
            raise TorsionPoint(f"{P} has order {n}")
        Q = _add(c, Q, P)


def canonical_height(c: Curve, P: Point, iters: int = 8) -> float:
    """Doubling-limit estimate 4^-k * (1/2) log H(x(2^k P))."""
    _check(c, P)
    if P.is_infinity:
        raise TorsionPoint("O is torsion")
    _torsion_check(c, P)
    Q = P
    for _ in range(iters):
        Q = _add(c, Q, Q)
        if Q.is_infinity:
            raise TorsionPoint(f"{P} is torsion")
    h = 0.5 * naive_log_height(Q.x) / 4**iters
    if h <= 0:
        raise TorsionPoint(f"naive height of 2^k {P} does not grow")
    return h


# -- real locus ---------------------------------------------------------------

def _cubic(c: Curve, x):
    """4x^3 + b2 x^2 + 2 b4 x + b6, i.e. (2y + a1 x + a3)^2 on the curve."""
    return ((4 * x + c.b2) * x + 2 * c.b4) * x + c.b6


def largest_real_root(c: Curve, tol: float = 1e-12) -> float:
    """Largest real root of x^3 + (b2/4)x^2 + (b4/2)x + b6/4, by bisection."""
    hi = 1.0 + max(abs(c.b2) / 4, abs(c.b4) / 2, abs(c.b6) / 4)
    lo = -hi
    disc_deriv = 4 * c.b2 * c.b2 - 96 * c.b4
    if disc_deriv > 0:
        # the largest root sits right of the local minimum of the cubic
        crit = (-2 * c.b2 + math.sqrt(disc_deriv)) / 24
        if _cubic(c, crit) <= 0:
            lo = crit
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _cubic(c, mid) <= 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def is_on_identity_component(c: Curve, P: Point) -> bool:
    """Whether P lies on the connected component of O in E(R).

    Exact: for disc > 0 a real point is on the unbounded branch iff x(P)
    exceeds the larger critical point of the cubic.
    """
    _check(c, P)
    if P.is_infinity or c.disc < 0:
        return True
    x = P.x
    deriv = (12 * x + 2 * c.b2) * x + 2 * c.b4
    return deriv > 0 and 12 * x + c.b2 > 0


# -- reduction mod p ----------------------------------------------------------

@dataclass(frozen=True)
class ReducedPointData:
    p: int
    reduces_to_infinity: bool
    nonsingular: bool

    def __post_init__(self):
        assert self.nonsingular or not self.reduces_to_infinity


def _reduce_affine(P: Point, p: int):
    x, y = P.x, P.y
    return (x.numerator * pow(x.denominator, -1, p) % p,
            y.numerator * pow(y.denominator, -1, p) % p)


def reduction_data(c: Curve, P: Point, p: int) -> ReducedPointData:
    _check(c, P)
    if P.is_infinity or (P.x != 0 and vp_rational(P.x, p) < 0):
        return ReducedPointData(p, True, True)
    x, y = _reduce_affine(P, p)
    fx = (c.a1 * y - 3 * x * x - 2 * c.a2 * x - c.a4) % p
    fy = (2 * y + c.a1 * x + c.a3) % p
    return ReducedPointData(p, False, bool(fx or fy))


def count_points_mod_p(c: Curve, p: int) -> int:
    """#E(F_p) by enumeration, point at infinity included."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if c.disc % p == 0:
        raise BadReductionPrime(f"{p} divides the discriminant {c.disc}")
    if p >= 2**31:
        raise ValueError("enumeration limited to p < 2^31")
    if p == 2:
        count = 1
        for x in range(2):
            for y in range(2):
                lhs = y * y + c.a1 * x * y + c.a3 * y
                rhs = x**3 + c.a2 * x * x + c.a4 * x + c.a6
                count += (lhs - rhs) % 2 == 0
        n = count
    else:
        xs = np.arange(p, dtype=np.int64)
        f = (4 * xs) % p
        f = ((f + c.b2 % p) * xs) % p
        f = ((f + (2 * c.b4) % p) * xs) % p
        f = (f + c.b6 % p) % p
        roots = np.bincount((xs * xs) % p, minlength=p)
        n = 1 + int(roots[f].sum())
    assert (n - p - 1) ** 2 <= 4 * p, "Hasse bound violated"
    return n


def _add_mod(c: Curve, P, Q, p):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2 + c.a1 * x2 + c.a3) % p == 0:
            return None
        lam = (3 * x1 * x1 + 2 * c.a2 * x1 + c.a4 - c.a1 * y1) * pow(2 * y1 + c.a1 * x1 + c.a3, -1, p)
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p)
    lam %= p
    nu = (y1 - lam * x1) % p
    x3 = (lam * lam + c.a1 * lam - c.a2 - x1 - x2) % p
    y3 = (-(lam + c.a1) * x3 - nu - c.a3) % p
    return (x3, y3)


def _mul_mod(c, n, P, p):
    result, base = None, P
    while n:
        if n & 1:
            result = _add_mod(c, result, base, p)
        n >>= 1
        if n:
            base = _add_mod(c, base, base, p)
    return result


def ord_mod_p(c: Curve, P: Point, p: int) -> int:
    """Order of P in E_0(Q_p)/E_1(Q_p), i.e. of its reduction."""
    red = reduction_data(c, P, p)
    if not red.nonsingular:
        raise SingularReduction(f"{P} has singular reduction at {p}")
    if red.reduces_to_infinity:
        return 1
    Pbar = _reduce_affine(P, p)
    if c.disc % p:
        n = count_points_mod_p(c, p)
        order = n
        for q in factor_completely(n):
            while order % q == 0 and _mul_mod(c, order // q, Pbar, p) is None:
                order //= q
        assert n % order == 0
        return order
    Q, m = Pbar, 1
    while Q is not None:
        Q = _add_mod(c, Q, Pbar, p)
        m += 1
        if m > 2 * p + 2:
            raise AssertionError("order search overran the nonsingular group size")
    return m


# -- literals -----------------------------------------------------------------

def parse_curve(text: str) -> Curve:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 5:
        raise ValueError(f"curve literal needs 5 integers: {text!r}")
    return Curve(*(int(s) for s in parts))


def parse_point(text: str) -> Point:
    text = text.strip()
    if text.upper() in ("O", "INF", "INFINITY"):
        return INFINITY
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 2:
        raise ValueError(f"point literal needs x,y: {text!r}")
    return Point(Fraction(parts[0]), Fraction(parts[1]))
