from __future__ import annotations

import itertools
from math import gcd

import pytest
from hypothesis import given, strategies as st

from coincidence.arith import factor, gl2_order, is_prime, is_prime_power, sl2_order, totient, unit_group, vp


def brute_gl2(n):
    return sum(1 for a, b, c, d in itertools.product(range(n), repeat=4) if gcd(a * d - b * c, n) == 1)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 8, 9, 12])
def test_gl2_order_matches_enumeration(n):
    assert gl2_order(n) == brute_gl2(n)


def test_gl2_order_small_values():
    assert [gl2_order(n) for n in (2, 3, 4, 5)] == [6, 48, 96, 480]
    assert gl2_order(8) // gl2_order(4) == 2**4


def test_sl2_order():
    assert sl2_order(2) == 6
    assert sl2_order(3) == 24
    assert sl2_order(5) == 120
    assert sl2_order(12) == 1152


@given(st.integers(2, 400), st.integers(2, 400))
def test_gl2_order_is_multiplicative_on_coprime_moduli(a, b):
    if gcd(a, b) == 1:
        assert gl2_order(a * b) == gl2_order(a) * gl2_order(b)


@given(st.integers(1, 10**6))
def test_factor_reconstructs(n):
    f = factor(n)
    prod = 1
    for p, e in f.items():
        assert is_prime(p)
        prod *= p**e
    assert prod == n


@given(st.integers(2, 2000))
def test_totient_counts_units(n):
    assert totient(n) == len(unit_group(n))


def test_valuation_and_prime_powers():
    assert vp(96, 2) == 5
    assert vp(-27, 3) == 3
    assert vp(7, 2) == 0
    assert is_prime_power(49) and not is_prime_power(12) and not is_prime_power(1)
    with pytest.raises(ValueError):
        vp(0, 2)
    with pytest.raises(ValueError):
        gl2_order(1)
