from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from coincidence.arith import gl2_order
from coincidence.errors import BadModulus, NotInvertible
from coincidence.modmat import Mat2, Residue, S, T, det, element_order, identity, invert, reduce_mat

from strategies import invertible, invertible_entries


def test_entries_are_canonical():
    M = Mat2.from_literal(12, [-1, -1, 0, -1])
    assert M.entries == (11, 11, 0, 11)
    assert M.to_literal() == [11, 11, 0, 11]


def test_named_matrices():
    assert S(5).entries == (0, 4, 1, 0)
    assert element_order(S(5)) == 4
    assert element_order(T(7)) == 7
    assert element_order(identity(9)) == 1


def test_inverse_and_noninvertible():
    M = Mat2.of(5, 2, 1, 1, 1)
    assert (M @ invert(M)) == identity(5)
    with pytest.raises(NotInvertible):
        invert(Mat2.of(4, 2, 0, 0, 1))
    with pytest.raises(NotInvertible):
        Residue(6, 3).inverse()


def test_bad_moduli():
    for n in (0, 1, -3, 2**20 + 1):
        with pytest.raises(BadModulus):
            Mat2(n, (1, 0, 0, 1))
    with pytest.raises(BadModulus):
        Mat2.of(4, 1, 0, 0, 1) @ Mat2.of(6, 1, 0, 0, 1)
    with pytest.raises(BadModulus):
        reduce_mat(T(9), 2)
    with pytest.raises(ValueError):
        Mat2.from_literal(5, [1, 2, 3])


def test_residue_arithmetic():
    r = Residue(7, 3)
    assert int(r * r.inverse()) == 1
    assert int(r + 5) == 1
    assert int(-r) == 4
    with pytest.raises(BadModulus):
        r + Residue(5, 1)


@st.composite
def same_modulus_pair(draw):
    n = draw(st.sampled_from([2, 3, 4, 6, 8, 9, 10, 12, 16]))
    return n, draw(invertible_entries(n)), draw(invertible_entries(n))


@given(same_modulus_pair())
def test_det_is_multiplicative(data):
    n, x, y = data
    M, N = Mat2(n, x), Mat2(n, y)
    assert det(M @ N) == det(M) * det(N)


@given(invertible())
def test_order_divides_group_order(M):
    assert gl2_order(M.modulus) % element_order(M) == 0
    assert (M ** element_order(M)) == identity(M.modulus)


@given(same_modulus_pair(), st.data())
def test_reduction_is_a_homomorphism(data, draw):
    n, x, y = data
    divisors = [m for m in range(2, n + 1) if n % m == 0]
    m = draw.draw(st.sampled_from(divisors))
    M, N = Mat2(n, x), Mat2(n, y)
    assert reduce_mat(M @ N, m) == reduce_mat(M, m) @ reduce_mat(N, m)
    assert reduce_mat(identity(n), m) == identity(m)
    assert reduce_mat(M, n) == M
    assert element_order(M) % element_order(reduce_mat(M, m)) == 0
