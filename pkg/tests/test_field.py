"""Field arithmetic: axioms checked exhaustively for every prime up to 251."""

import pytest

from hinge.field import FieldElement, PrimeField, field_inv, is_prime


PRIMES_TO_251 = [p for p in range(2, 252) if is_prime(p)]


def test_is_prime_small():
    assert [p for p in range(2, 30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(0)
    assert not is_prime(1)
    assert not is_prime(-7)


def test_nonprime_modulus_rejected():
    for bad in (0, 1, 4, 6, 9, 12, 100):
        with pytest.raises(ValueError):
            PrimeField(bad)


def test_every_unit_has_inverse():
    for p in PRIMES_TO_251:
        field = PrimeField(p)
        for a in range(1, p):
            inv = field.inv(a)
            assert (a * inv) % p == 1, f"inv failed for {a} mod {p}"


def test_inverse_of_zero_rejected():
    field = PrimeField(7)
    with pytest.raises(ZeroDivisionError):
        field.inv(0)


def test_element_reduction():
    field = PrimeField(5)
    assert field(7) == field(2)
    assert field(-1) == field(4)
    assert int(field(12)) == 2


def test_element_arithmetic_exhaustive_gf7():
    field = PrimeField(7)
    p = 7
    for a in range(p):
        for b in range(p):
            x, y = field(a), field(b)
            assert int(x + y) == (a + b) % p
            assert int(x - y) == (a - b) % p
            assert int(x * y) == (a * b) % p
            assert int(-x) == (-a) % p
            if b:
                assert int(x / y) == (a * pow(b, p - 2, p)) % p


def test_element_field_mismatch():
    a = PrimeField(3)(1)
    b = PrimeField(5)(1)
    with pytest.raises(ValueError):
        a + b


def test_field_inv_helper():
    a = PrimeField(11)(4)
    assert int(field_inv(a)) == 3  # 4 * 3 = 12 = 1 mod 11
    assert isinstance(field_inv(a), FieldElement)


def test_field_equality_and_hash():
    assert PrimeField(5) == PrimeField(5)
    assert PrimeField(5) != PrimeField(7)
    assert hash(PrimeField(5)) == hash(PrimeField(5))
    assert len({PrimeField(2), PrimeField(2), PrimeField(3)}) == 2
