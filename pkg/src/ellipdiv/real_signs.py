"""Real period, normalised elliptic logarithm and the sign law of beta_n.

The signs follow sigma^(n-1) sign(beta_n) = (-1)^floor(n b) on the identity
component, with an even/odd split off it. The real number b is fitted against
exact signs from elliptic-logarithm candidates.

On the identity component beta is taken in (0, 1); off it, in (-1, 0).
The law is invariant under (b, sigma) -> (-1 - b, -sigma); fits are unique
only up to that move, and the member with sigma = +1 is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .curve import Curve, Point, _check, _mul, is_on_identity_component
from .eds import EdsSequence
from .errors import AmbiguousFloor, NoConsistentFit, PrecisionLoss
from .numtheory import primes_upto

__all__ = [
    "SignData",
    "real_period_and_log",
    "elliptic_log",
    "x_from_log",
    "fit_sign_data",
    "verify_sign_law",
    "sign_law_prediction",
    "equidistribution_stats",
]

MAX_PRECISION = 1024


# -- real period and elliptic logarithm ------------------------------------------------

def _roots(c: Curve):
    """Roots of 4x^3 + b2 x^2 + 2 b4 x + b6 at the current precision."""
    rts = mpmath.polyroots([4, c.b2, 2 * c.b4, c.b6], maxsteps=200, extraprec=2 * mpmath.mp.prec)
    return rts


def _real_data(c: Curve):
    rts = _roots(c)
    if c.disc > 0:
        e1, e2, e3 = sorted((mpmath.re(r) for r in rts), reverse=True)
        lam = e1 - e3
        m = (e2 - e3) / lam
        return ("split", e1, e2, e3, lam, m)
    real = min(rts, key=lambda r: abs(mpmath.im(r)))
    a = mpmath.re(real)
    other = [r for r in rts if r is not real][0]
    b1, a1 = mpmath.re(other), abs(mpmath.im(other))
    A = mpmath.sqrt((b1 - a) ** 2 + a1 ** 2)
    k2 = (A + b1 - a) / (2 * A)
    return ("single", a, A, k2)


def _period(data):
    if data[0] == "split":
        _, e1, e2, e3, lam, m = data
        return 2 * mpmath.ellipk(m) / mpmath.sqrt(lam)
    _, a, A, k2 = data
    return 2 * mpmath.ellipk(k2) / mpmath.sqrt(A)


def _tail_integral(data, x):
    """Integral of dx / sqrt(4x^3 + ...) from x to infinity."""
    if data[0] == "split":
        _, e1, e2, e3, lam, m = data
        phi = mpmath.asin(mpmath.sqrt(lam / (x - e3)))
        return mpmath.ellipf(phi, m) / mpmath.sqrt(lam)
    _, a, A, k2 = data
    phi = mpmath.acos((x - a - A) / (x - a + A))
    return mpmath.ellipf(phi, k2) / (2 * mpmath.sqrt(A))


def elliptic_log(c: Curve, P: Point, precision: int = 64):
    """Normalised logarithm t in [0, 1) of P on the identity component."""
    _check(c, P)
    if P.is_infinity:
        return mpmath.mpf(0)
    if not is_on_identity_component(c, P):
        raise ValueError(f"{P} is not on the identity component")
    with mpmath.workdps(precision + 10):
        data = _real_data(c)
        x = mpmath.mpf(P.x.numerator) / P.x.denominator
        t = _tail_integral(data, x) / _period(data)
        w = 2 * P.y + c.a1 * P.x + c.a3
        if w > 0:
            t = 1 - t
        return +t


def x_from_log(c: Curve, t, precision: int = 64):
    """Inverse map on x-coordinates: the x of the point with normalised log t."""
    with mpmath.workdps(precision + 10):
        data = _real_data(c)
        u = mpmath.mpf(t) * _period(data)
        if data[0] == "split":
            _, e1, e2, e3, lam, m = data
            sn = mpmath.ellipfun("sn", u * mpmath.sqrt(lam), m=m)
            return e3 + lam / sn**2
        _, a, A, k2 = data
        cn = mpmath.ellipfun("cn", 2 * u * mpmath.sqrt(A), m=k2)
        return a + A * (1 + cn) / (1 - cn)


def real_period_and_log(c: Curve, P: Point, precision: int = 64):
    """(Omega, t): real period of E(R)^0 and the normalised log of P.

    Off the identity component t is half the log of 2P; the other half,
    t + 1/2, is equally valid and the sign fit chooses between them.
    """
    _check(c, P)
    with mpmath.workdps(precision + 10):
        Omega = _period(_real_data(c))
    if P.is_infinity:
        return +Omega, mpmath.mpf(0)
    on = is_on_identity_component(c, P)
    Q = P if on else _mul(c, 2, P)
    if Q.is_infinity:
        return +Omega, mpmath.mpf(0)
    t = elliptic_log(c, Q, precision)
    back = x_from_log(c, t, precision)
    x = mpmath.mpf(Q.x.numerator) / Q.x.denominator
    if abs(back - x) > mpmath.mpf(10) ** (3 - precision) * max(1, abs(x)):
        raise PrecisionLoss(f"elliptic log of {Q} does not reconstruct x at {precision} digits")
    return +Omega, (t if on else t / 2)


# -- sign law --------------------------------------------------------------------------------

@dataclass(frozen=True)
class SignData:
    sigma: int
    beta: object
    component_branch: str
    matched_window: int
    precision: int = 64
    recipe: tuple = (0, False)

    def beta_at(self, seq: EdsSequence, precision: int):
        """The same fitted beta recomputed at another precision."""
        return _candidate(seq, precision, *self.recipe)


def _candidate(seq, precision, shift, reflect):
    _, t = real_period_and_log(seq.curve, seq.P, precision)
    with mpmath.workdps(precision + 10):
        h = t + mpmath.mpf(shift) / 2
        if shift < 0:
            # identity component: beta in (0, 1)
            return +(1 - t if reflect else t)
        b = h - 1 if reflect else -h
        return +b


def sign_law_prediction(branch: str, sigma: int, floor_nb: int, n: int) -> int:
    """Predicted sign(beta_n) for n >= 2."""
    if branch == "identity":
        s = -1 if floor_nb % 2 else 1
    elif n % 2 == 0:
        s = -1 if (floor_nb + n // 2) % 2 else 1
    else:
        s = -1 if ((n - 1) // 2) % 2 else 1
    return s * (sigma ** ((n - 1) % 2))


def _floors(b, ns, precision):
    """floor(n b) for each n, or None where the floor is too close to call."""
    tol = mpmath.mpf(10) ** (-(precision - 8))
    out = []
    with mpmath.workdps(precision + 10):
        for n in ns:
            v = n * b
            f = int(mpmath.floor(v))
            if min(v - f, f + 1 - v) < tol * n:
                out.append(None)
            else:
                out.append(f)
    return out


def fit_sign_data(seq: EdsSequence, window: int = 50, precision: int = 64) -> SignData:
    c, P = seq.curve, seq.P
    if window < 2:
        raise ValueError("window must be at least 2")
    branch = "identity" if is_on_identity_component(c, P) else "nonidentity"
    ns = list(range(2, window + 1))
    signs = {n: seq.psi_sign(n) for n in ns}
    if branch == "nonidentity":
        for n in ns:
            if n % 2 and sign_law_prediction(branch, 1, 0, n) != signs[n]:
                raise NoConsistentFit(f"odd-index sign law fails at n={n}")
    # on E(R)^0 no beta in (-1, 0) can work: it is off by (-1)^n against n = 2, 3
    shifts = (-1,) if branch == "identity" else (0, 1)
    fit_ns = ns if branch == "identity" else [n for n in ns if n % 2 == 0]
    while True:
        survivors = []
        ambiguous = False
        for shift in shifts:
            for reflect in (False, True):
                b = _candidate(seq, precision, shift, reflect)
                fl = _floors(b, fit_ns, precision)
                if None in fl:
                    ambiguous = True
                    continue
                for sigma in (1, -1):
                    if all(sign_law_prediction(branch, sigma, f, n) == signs[n]
                           for f, n in zip(fl, fit_ns)):
                        survivors.append((sigma, b, shift, reflect))
        if ambiguous and precision < MAX_PRECISION:
            precision *= 2
            continue
        break
    # (b, sigma) and (-1 - b, -sigma) always agree; keep sigma = +1
    canon = [s for s in survivors if s[0] == 1]
    if not canon:
        raise NoConsistentFit(f"no (sigma, beta) reproduces the signs up to n={window}")
    if len(canon) > 1:
        raise NoConsistentFit(f"{len(canon)} inequivalent fits survive on window {window}")
    sigma, b, shift, reflect = canon[0]
    return SignData(sigma, b, branch, window, precision, (shift, reflect))


def verify_sign_law(seq: EdsSequence, sd: SignData, n_max: int):
    """First n in [2, n_max] where the law fails, or None if it holds throughout.

    Floors too close to an integer are recomputed with doubled precision, up to
    MAX_PRECISION digits.
    """
    ns = list(range(2, n_max + 1))
    precision = sd.precision
    b = sd.beta
    fl = _floors(b, ns, precision)
    while None in fl:
        if precision >= MAX_PRECISION:
            n = ns[fl.index(None)]
            raise AmbiguousFloor(f"floor(n beta) undecided at n={n} with {precision} digits")
        precision *= 2
        b = sd.beta_at(seq, precision)
        fl = _floors(b, ns, precision)
    for n, f in zip(ns, fl):
        if sign_law_prediction(sd.component_branch, sd.sigma, f, n) != seq.psi_sign(n):
            return n
    return None


# -- equidistribution ------------------------------------------------------------------------

def equidistribution_stats(sd: SignData, x: int, s: int, t: int, a, b):
    """(count, expected) for primes l <= x, l = s mod t, {l beta / 2} in [a, b).

    Fractional parts are exact on a fixed-point integer image of beta;
    expected is (b - a)/phi(t) * x/log x.
    """
    if math.gcd(s, t) != 1:
        raise ValueError("s and t must be coprime")
    a, b = Fraction(a), Fraction(b)
    if b <= a:
        return 0, 0.0
    scale = 10 ** sd.precision
    with mpmath.workdps(sd.precision + 10):
        B = int(mpmath.nint(sd.beta * scale))
    den = 2 * scale
    lo, hi = a * den, b * den
    count = 0
    for ell in primes_upto(x):
        if ell % t != s % t:
            continue
        r = (ell * B) % den
        if lo <= r < hi:
            count += 1
    phi = sum(1 for k in range(1, t + 1) if math.gcd(k, t) == 1)
    expected = float(b - a) / phi * x / math.log(x) if x > 1 else 0.0
    return count, expected
