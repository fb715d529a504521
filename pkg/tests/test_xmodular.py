from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from coincidence.errors import Pole
from coincidence.xmodular import DENOMINATOR, NUMERATOR, cm_j_invariants, j_of_t, parse_rational, search_preimages

# the printed map, transcribed separately from the coefficient tuples
_t = sympy.Symbol("t")
PRINTED = sympy.sympify(
    "(-4*t**8+32*t**7+80*t**6-288*t**5-504*t**4+864*t**3+1296*t**2-864*t-1188)/(t**4+4*t**3+6*t**2+4*t+1)"
)


def oracle(t: Fraction) -> Fraction:
    value = PRINTED.subs(_t, sympy.Rational(t.numerator, t.denominator))
    return Fraction(int(value.p), int(value.q))


def test_printed_values():
    assert j_of_t(0) == -1188
    assert j_of_t(1) == -36
    assert oracle(Fraction(0)) == -1188
    assert oracle(Fraction(1)) == -36


@given(st.fractions(max_denominator=50).filter(lambda t: t != -1 and abs(t) <= 200))
def test_matches_the_sympy_evaluation(t):
    assert j_of_t(t) == oracle(t)


def test_denominator_is_a_fourth_power():
    assert sympy.Poly(list(reversed(DENOMINATOR)), _t).as_expr().equals((_t + 1) ** 4)
    assert len(NUMERATOR) == 9


def test_pole_exactly_at_minus_one():
    with pytest.raises(Pole):
        j_of_t(-1)
    with pytest.raises(Pole):
        j_of_t("-2/2")
    j_of_t(Fraction(-99, 100))


def test_parse_rational():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational(" 7 ") == 7
    assert parse_rational("1.5") == Fraction(3, 2)
    for bad in ("", "1/0", "x", "1/2/3"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_no_cm_preimages_at_height_30():
    found = search_preimages([0, 1728], 30)
    assert found == {Fraction(0): [], Fraction(1728): []}
    assert not any(search_preimages(cm_j_invariants(), 30).values())


def test_search_finds_known_values_in_scan_order():
    target = j_of_t(Fraction(1, 2))
    assert search_preimages([target], 2)[target] == [Fraction(1, 2)]
    hits = search_preimages([j_of_t(0), j_of_t(3)], 3)
    assert Fraction(0) in hits[Fraction(-1188)]
    assert search_preimages([], 5) == {}
    with pytest.raises(ValueError):
        search_preimages([0], 0)


@given(st.integers(1, 6), st.integers(0, 6))
def test_search_is_monotone_in_the_height(h, extra):
    targets = [j_of_t(0), j_of_t(2), j_of_t(Fraction(-1, 3)), Fraction(1728)]
    low, high = search_preimages(targets, h), search_preimages(targets, h + extra)
    for j, ts in low.items():
        assert set(ts) <= set(high[j])


def test_bundled_cm_list():
    values = cm_j_invariants()
    assert len(values) == 13
    assert {Fraction(0), Fraction(1728), Fraction(-3375), Fraction(8000)} <= set(values)
