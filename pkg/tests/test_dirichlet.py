import math

import pytest
from hypothesis import given, strategies as st
from sympy import factorint, jacobi_symbol
from sympy.ntheory import discrete_log

from ellipdiv.dirichlet import (DirichletCharacter, enumerate_characters, eval_char,
                                is_fundamental_discriminant, kronecker, parse_character,
                                value_order)
from ellipdiv.errors import CompositeModulus, ConfigError, InvalidDiscriminant
from ellipdiv.numtheory import primes_upto

FUNDAMENTAL = [d for d in range(-200, 201) if is_fundamental_discriminant(d)]


def _kronecker_oracle(D, m):
    """(D/m) from the prime factorisation of m and the defining table at 2 and -1."""
    if m == 0:
        return 1 if abs(D) == 1 else 0
    out = 1
    if m < 0:
        m = -m
        out = -1 if D < 0 else 1
    for p, e in factorint(m).items():
        if p == 2:
            if D % 2 == 0:
                return 0
            s = 1 if D % 8 in (1, 7) else -1
        else:
            s = jacobi_symbol(D % p, p)
        out *= s**e
    return out


def test_examples():
    assert kronecker(-4, 3) == -1
    assert kronecker(-4, -1) == -1
    assert all(kronecker(D, 1) == 1 for D in FUNDAMENTAL)


@given(st.sampled_from(FUNDAMENTAL), st.integers(-500, 500))
def test_kronecker_against_factorisation(D, m):
    assert kronecker(D, m) == _kronecker_oracle(D, m)


@pytest.mark.parametrize("D", [-4, -3, 5, 8, -8, 12, -7, 13, -20, 21])
def test_kronecker_period(D):
    q = abs(D)
    vals = [kronecker(D, m) for m in range(1, 4 * q + 1)]
    assert vals[q:] == vals[:-q]
    assert kronecker(D, -1) == (1 if D > 0 else -1)
    assert all((kronecker(D, m) == 0) == (math.gcd(m, q) > 1) for m in range(1, q + 1))


def test_strict_discriminant():
    with pytest.raises(InvalidDiscriminant):
        kronecker(12 * 4, 5, strict=True)
    with pytest.raises(InvalidDiscriminant):
        DirichletCharacter.from_kronecker(-3 * 4)
    assert kronecker(-12, 5) == -1


def test_enumeration_counts():
    assert len(enumerate_characters(5)) == 4
    assert len(enumerate_characters(5, "even")) == 2
    order3 = [c for c in enumerate_characters(7) if c.order == 3]
    assert sorted(c.j for c in order3) == [2, 4]
    assert [c for c in enumerate_characters(3, "even") if not c.is_principal] == []
    for q in primes_upto(100)[1:]:
        chars = enumerate_characters(q)
        assert len(chars) == q - 1
        even = [c for c in chars if c.is_even]
        assert len(even) == (q - 1) // 2
        assert sum(c.is_principal for c in chars) == 1
        assert {c.j for c in even} == {c.j for c in enumerate_characters(q, "even")}


def test_enumeration_errors():
    with pytest.raises(CompositeModulus):
        enumerate_characters(15)
    with pytest.raises(CompositeModulus):
        enumerate_characters(2)
    with pytest.raises(ValueError):
        enumerate_characters(7, "sideways")


def test_values_and_orders():
    chi = next(c for c in enumerate_characters(7) if c.order == 3 and not eval_char(c, 2).is_one)
    v = eval_char(chi, 2)
    assert not v.zero and v.exponent != 0
    assert value_order(chi, 2) == 3
    assert value_order(chi, 7) is None
    assert eval_char(chi, 14).zero
    assert eval_char(DirichletCharacter.prime_modulus(7, 0), 3).is_one
    k4 = DirichletCharacter.from_kronecker(-4)
    assert value_order(k4, 3) == 2 and value_order(k4, 5) == 1 and value_order(k4, 2) is None


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13, 31, 101])
def test_exponents_match_index(q):
    # chi(g^a) = zeta^(j a), so ord chi(m) = (q-1)/gcd(j a, q-1)
    for chi in enumerate_characters(q):
        for m in range(1, q):
            a = discrete_log(q, m, chi.g)
            assert value_order(chi, m) == (q - 1) // math.gcd(chi.j * a, q - 1)


def test_large_prime_uses_bsgs():
    q = 10007
    chi = DirichletCharacter.prime_modulus(q, 1)
    g = chi.g
    assert eval_char(chi, pow(g, 1234, q)).exponent == 1234


@given(st.sampled_from([3, 5, 7, 11, 13, 17, 19, 23, 29]), st.data())
def test_multiplicative(q, data):
    chi = DirichletCharacter.prime_modulus(q, data.draw(st.integers(0, q - 2)))
    m = data.draw(st.integers(-10**6, 10**6))
    n = data.draw(st.integers(-10**6, 10**6))
    vm, vn, vmn = eval_char(chi, m), eval_char(chi, n), eval_char(chi, m * n)
    assert vmn.zero == (vm.zero or vn.zero)
    if not vmn.zero:
        assert vmn.exponent == (vm.exponent + vn.exponent) % chi.order
    assert eval_char(chi, m + q) == vm


@given(st.sampled_from(FUNDAMENTAL), st.integers(-10**4, 10**4), st.integers(-10**4, 10**4))
def test_kronecker_multiplicative(D, m, n):
    assert kronecker(D, m * n) == kronecker(D, m) * kronecker(D, n)


def test_parse():
    assert parse_character("kronecker:-4") == DirichletCharacter.from_kronecker(-4)
    assert parse_character("prime:7:2").order == 3
    assert parse_character("prime:7:2").literal() == "prime:7:2"
    for bad in ["kronecker", "prime:7", "kronecker:x", "dirichlet:5:1", ""]:
        with pytest.raises(ConfigError):
            parse_character(bad)
    with pytest.raises(CompositeModulus):
        parse_character("prime:9:1")
