"""Dirichlet characters with values kept as exponents of a root of unity.

Two kinds are supported: the quadratic character of a discriminant D
(the Kronecker symbol, modulus |D|) and every character of prime modulus q,
written chi(g^a) = zeta^(j a) for the least primitive root g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy.ntheory import discrete_log, primitive_root

from .errors import CompositeModulus, ConfigError, InvalidDiscriminant
from .numtheory import factor_completely, is_prime

__all__ = [
    "kronecker",
    "is_fundamental_discriminant",
    "CharValue",
    "DirichletCharacter",
    "enumerate_characters",
    "eval_char",
    "value_order",
    "parse_character",
]

TABLE_LIMIT = 10**4
BSGS_LIMIT = 10**6


def kronecker(D: int, m: int, strict: bool = False) -> int:
    """Kronecker symbol (D/m)."""
    if strict and not is_fundamental_discriminant(D):
        raise InvalidDiscriminant(f"{D} is not a fundamental discriminant")
    a, n = int(D), int(m)
    if n == 0:
        return 1 if abs(a) == 1 else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    # factor out powers of two: (a/2) is 0 for even a, else +-1 by a mod 8
    v = (n & -n).bit_length() - 1
    n >>= v
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            sign = -sign
    # Jacobi symbol (a/n), n odd positive
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def is_fundamental_discriminant(D: int) -> bool:
    D = int(D)
    if D in (0, 1):
        return False
    if D % 4 == 1:
        m = D
    elif D % 4 == 0 and (D // 4) % 4 in (2, 3):
        m = D // 4
    else:
        return False
    return all(e == 1 for e in factor_completely(abs(m)).values()) if abs(m) > 1 else True


@dataclass(frozen=True)
class CharValue:
    """chi(m) as zeta_order^exponent, or zero."""

    zero: bool
    exponent: int = 0

    @property
    def is_one(self) -> bool:
        return not self.zero and self.exponent == 0


@lru_cache(maxsize=64)
def _log_table(q: int, g: int) -> np.ndarray:
    table = np.zeros(q, dtype=np.int64)
    x = 1
    for a in range(q - 1):
        table[x] = a
        x = x * g % q
    return table


def _dlog(q: int, g: int, m: int) -> int:
    if q < TABLE_LIMIT:
        return int(_log_table(q, g)[m])
    if q > BSGS_LIMIT:
        raise ValueError(f"discrete logs above {BSGS_LIMIT} are not supported")
    return int(discrete_log(q, m, g))


@dataclass(frozen=True)
class DirichletCharacter:
    q: int
    kind: str
    D: int = 0
    g: int = 0
    j: int = 0

    @classmethod
    def from_kronecker(cls, D: int, strict: bool = True) -> "DirichletCharacter":
        if strict and not is_fundamental_discriminant(D):
            raise InvalidDiscriminant(f"{D} is not a fundamental discriminant")
        return cls(abs(int(D)), "kronecker", D=int(D))

    @classmethod
    def prime_modulus(cls, q: int, j: int) -> "DirichletCharacter":
        q = int(q)
        if q < 3 or not is_prime(q):
            raise CompositeModulus(f"{q} is not an odd prime")
        return cls(q, "prime", g=int(primitive_root(q)), j=int(j) % (q - 1))

    @property
    def order(self) -> int:
        if self.kind == "kronecker":
            return 1 if self.D == 1 else 2
        return (self.q - 1) // math.gcd(self.j, self.q - 1)

    @property
    def is_principal(self) -> bool:
        return self.order == 1

    @property
    def is_even(self) -> bool:
        return self(-1).exponent == 0

    def __call__(self, m: int) -> CharValue:
        return eval_char(self, m)

    def literal(self) -> str:
        if self.kind == "kronecker":
            return f"kronecker:{self.D}"
        return f"prime:{self.q}:{self.j}"


def eval_char(chi: DirichletCharacter, m: int) -> CharValue:
    m = int(m)
    if chi.kind == "kronecker":
        k = kronecker(chi.D, m)
        if k == 0:
            return CharValue(True)
        return CharValue(False, 0 if k == 1 or chi.order == 1 else 1)
    r = m % chi.q
    if r == 0:
        return CharValue(True)
    n = chi.q - 1
    step = chi.j // math.gcd(chi.j, n) if chi.j else 0
    return CharValue(False, step * _dlog(chi.q, chi.g, r) % chi.order)


def value_order(chi: DirichletCharacter, p: int):
    """Multiplicative order of chi(p); None marks chi(p) = 0."""
    v = eval_char(chi, p)
    if v.zero:
        return None
    return chi.order // math.gcd(v.exponent, chi.order)


def enumerate_characters(q: int, parity: str = "all") -> list[DirichletCharacter]:
    if parity not in ("all", "even", "odd"):
        raise ValueError(f"unknown parity {parity!r}")
    q = int(q)
    if q < 3 or not is_prime(q):
        raise CompositeModulus(f"{q} is not an odd prime")
    out = []
    for j in range(q - 1):
        if parity == "even" and j % 2:
            continue
        if parity == "odd" and j % 2 == 0:
            continue
        out.append(DirichletCharacter.prime_modulus(q, j))
    return out


def parse_character(text: str) -> DirichletCharacter:
    """'kronecker:D' or 'prime:q:j'."""
    parts = text.strip().split(":")
    try:
        if parts[0] == "kronecker" and len(parts) == 2:
            return DirichletCharacter.from_kronecker(int(parts[1]))
        if parts[0] == "prime" and len(parts) == 3:
            return DirichletCharacter.prime_modulus(int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise ConfigError(f"bad character literal {text!r}") from exc
    raise ConfigError(f"bad character literal {text!r}")
