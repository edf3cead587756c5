import math

import pytest
from hypothesis import given, strategies as st

from zmdiff.modring import (
    Factorization,
    InvalidModulus,
    ModulusMismatch,
    NotInvertible,
    NotNilpotent,
    Residue,
    extended_gcd,
    factorize,
    gcd3,
    nilpotency_index,
)


def test_extended_gcd_known_values():
    assert extended_gcd(12, 8) == (4, 1, -1)
    assert extended_gcd(0, 0)[0] == 0
    g, x, y = extended_gcd(240, 46)
    assert g == 2 and 240 * x + 46 * y == 2


@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))
def test_extended_gcd_bezout(a, b):
    g, x, y = extended_gcd(a, b)
    assert g == math.gcd(a, b)
    assert a * x + b * y == g


class TestResidue:
    def test_canonicalization(self):
        assert Residue(-75, 9).value == 6
        assert Residue(13, 6).value == 1
        assert Residue(6, 6).value == 0

    def test_invalid_modulus(self):
        with pytest.raises(InvalidModulus):
            Residue(1, 0)
        with pytest.raises(InvalidModulus):
            Residue(1, -4)

    def test_null_ring(self):
        # Z_1 has the single element 0, which is both zero and unit
        zero = Residue(5, 1)
        assert zero.value == 0
        assert (zero + zero).value == 0
        assert (zero * zero).value == 0
        assert zero.inverse() == zero
        assert (zero**0).value == 0

    def test_arithmetic(self):
        assert Residue(4, 6) + Residue(5, 6) == Residue(3, 6)
        assert Residue(4, 6) - Residue(5, 6) == Residue(5, 6)
        assert Residue(4, 6) * Residue(5, 6) == Residue(2, 6)
        assert -Residue(4, 6) == Residue(2, 6)
        assert Residue(2, 7) ** 5 == Residue(4, 7)
        assert Residue(3, 7) ** 0 == Residue(1, 7)

    def test_modulus_mismatch(self):
        with pytest.raises(ModulusMismatch):
            Residue(1, 2) + Residue(1, 3)
        with pytest.raises(ModulusMismatch):
            Residue(1, 2) * Residue(1, 3)

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            Residue(2, 7) ** -1

    def test_inverse_known_values(self):
        assert Residue(5, 12).inverse() == Residue(5, 12)
        assert Residue(3, 7).inverse() == Residue(5, 7)
        with pytest.raises(NotInvertible):
            Residue(2, 6).inverse()
        with pytest.raises(NotInvertible):
            Residue(0, 5).inverse()

    def test_str(self):
        assert str(Residue(4, 6)) == "[4]_6"


@given(st.integers(2, 64), st.integers(0, 10**6))
def test_inverse_times_self_is_one(m, v):
    x = Residue(v, m)
    if math.gcd(x.value, m) == 1:
        assert x * x.inverse() == Residue(1, m)
    else:
        with pytest.raises(NotInvertible):
            x.inverse()


def test_gcd3_known_values():
    assert gcd3(2, 3, 6) == 1
    assert gcd3(2, 6, 12) == 2
    assert gcd3(6, 9, 12) == 3
    assert gcd3(0, 0, 10) == 10
    with pytest.raises(InvalidModulus):
        gcd3(1, 1, 1)


def test_factorize_known_values():
    assert factorize(12) == Factorization(12, ((2, 2), (3, 1)))
    assert factorize(1) == Factorization(1, ())
    assert factorize(97) == Factorization(97, ((97, 1),))
    assert factorize(64) == Factorization(64, ((2, 6),))
    with pytest.raises(ValueError):
        factorize(0)


@given(st.integers(1, 10**6))
def test_factorize_round_trip(n):
    fact = factorize(n)
    product = 1
    for p, k in fact.factors:
        assert k >= 1
        product *= p**k
    assert product == n
    primes = [p for p, _ in fact.factors]
    assert primes == sorted(primes) and len(set(primes)) == len(primes)


def test_nilpotency_index_known_values():
    assert nilpotency_index(Residue(0, 2)) == 1
    assert nilpotency_index(Residue(2, 4)) == 2
    assert nilpotency_index(Residue(6, 12)) == 2
    assert nilpotency_index(Residue(3, 9)) == 2
    assert nilpotency_index(Residue(2, 16)) == 4
    assert nilpotency_index(Residue(0, 1)) == 1
    with pytest.raises(NotNilpotent):
        nilpotency_index(Residue(3, 6))
    with pytest.raises(NotNilpotent):
        nilpotency_index(Residue(1, 5))


@given(st.integers(2, 64), st.integers(0, 63))
def test_nilpotency_index_minimality(m, v):
    x = Residue(v, m)
    zero = Residue(0, m)
    try:
        k = nilpotency_index(x)
    except NotNilpotent:
        assert all(x**j != zero for j in range(1, m.bit_length() + 1))
        return
    assert x**k == zero
    if k > 1:
        assert x ** (k - 1) != zero
