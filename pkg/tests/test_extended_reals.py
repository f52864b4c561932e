"""Exact arithmetic, ordering, and classification on the ground carrier."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oomcalc.errors import DivisionByZero, ParseError, PoleAtPoint, ZeroDenominator, ZeroValue
from oomcalc.extended_reals import (
    EPS,
    ExtendedReal,
    Polynomial,
    Relation,
    parse_extended_real,
)
from oomcalc.infinity import INF
from oomcalc.oom import OomValue, Sign, classify

from helpers import random_er, random_polynomial

HALF = Fraction(1, 2)


def cross_multiplied_equal(value: ExtendedReal, num: Polynomial, den: Polynomial) -> bool:
    """Independent equality oracle: e^order * value.num / value.den must
    equal num / den, checked by polynomial cross-multiplication only."""
    shift = value.order
    if value.is_zero:
        return num.is_zero
    lhs = value.numerator * den
    rhs = num * value.denominator
    if shift >= 0:
        lhs = Polynomial({shift: 1}) * lhs
    else:
        rhs = Polynomial({-shift: 1}) * rhs
    return lhs == rhs


# ---------------------------------------------------------------------------
# canonicalization
# ---------------------------------------------------------------------------


def test_canonicalize_extracts_shift():
    value = ExtendedReal.from_polynomials(Polynomial({2: 1}), Polynomial({1: 1}))
    assert value.order == 1
    assert value.numerator == Polynomial({0: 1})
    assert value.denominator == Polynomial({0: 1})
    assert value == EPS


def test_canonicalize_zero_numerator():
    value = ExtendedReal.from_polynomials(Polynomial(), Polynomial({0: 1, 1: 1}))
    assert value.is_zero
    assert value.order is INF


def test_canonicalize_worked_instance():
    num = Polynomial({2: 3, 3: 3})
    den = Polynomial({0: 1, 1: -1})
    value = ExtendedReal.from_polynomials(num, den)
    assert value.order == 2
    assert value.numerator == Polynomial({0: 3, 1: 3})
    assert value.denominator == Polynomial({0: 1, 1: -1})
    assert cross_multiplied_equal(value, num, den)


def test_canonicalize_rejects_zero_denominator():
    with pytest.raises(ZeroDenominator):
        ExtendedReal.from_polynomials(Polynomial({0: 1}), Polynomial())


def test_canonical_soundness_random():
    rng = random.Random(101)
    for _ in range(500):
        num = random_polynomial(rng, max_degree=4)
        den = random_polynomial(rng, max_degree=4, allow_zero=False)
        value = ExtendedReal.from_polynomials(num, den)
        assert cross_multiplied_equal(value, num, den)
        # The canonical invariants themselves.
        if not value.is_zero:
            assert value.numerator.coefficient(0) != 0
            assert value.denominator.coefficient(0) == 1


# ---------------------------------------------------------------------------
# field operations
# ---------------------------------------------------------------------------


def test_additive_inverse_is_zero():
    assert (EPS + (-EPS)).is_zero


def test_multiplication_of_monomials():
    assert EPS * EPS == ExtendedReal.monomial(1, 2)


def test_subtraction_keeps_low_order_term():
    diff = EPS - EPS * EPS
    assert diff.order == 1
    assert diff.leading_coefficient == 1


def test_negation():
    assert (-ExtendedReal(0)).is_zero
    assert -EPS == ExtendedReal.monomial(-1, 1)
    two_minus_eps = ExtendedReal(2) - EPS
    assert -two_minus_eps == EPS - ExtendedReal(2)


def test_division_by_zero_raises():
    with pytest.raises(DivisionByZero):
        ExtendedReal(1) / ExtendedReal(0)
    with pytest.raises(DivisionByZero):
        ExtendedReal(0).inverse()


def test_field_laws_random_triples():
    rng = random.Random(202)
    one = ExtendedReal(1)
    zero = ExtendedReal(0)
    for _ in range(10_000):
        r = random_er(rng)
        s = random_er(rng)
        t = random_er(rng)
        assert (r + s) + t == r + (s + t)
        assert r + s == s + r
        assert (r * s) * t == r * (s * t)
        assert r * s == s * r
        assert r * (s + t) == r * s + r * t
        assert (r + (-r)) == zero
        if not r.is_zero:
            assert r * r.inverse() == one


def test_order_map_properties():
    rng = random.Random(303)
    for _ in range(2_000):
        r = random_er(rng, allow_zero=False)
        s = random_er(rng, allow_zero=False)
        assert (r * s).order == r.order + s.order
        total = r + s
        low = min(r.order, s.order)
        assert total.order >= low
        if r.order != s.order:
            assert total.order == low


# ---------------------------------------------------------------------------
# ordering
# ---------------------------------------------------------------------------


def test_between_eps_squared_and_eps():
    between = EPS - EPS * EPS
    assert EPS * EPS < between < EPS


def test_eps_is_positive():
    assert EPS > ExtendedReal(0)
    assert EPS.compare(0) is Relation.GT


def test_ratio_exceeds_one():
    ratio = (1 + EPS) / (1 - EPS)
    # Difference to 1 is 2e/(1-e): order 1, leading coefficient +2.
    diff = ratio - 1
    assert diff.order == 1
    assert diff.leading_coefficient == 2
    assert ratio > ExtendedReal(1)
    # Numeric spot check well inside the sign bound.
    assert ratio.evaluate_at(HALF) == 3 > 1


def test_ordering_properties_random():
    rng = random.Random(404)
    zero = ExtendedReal(0)
    for _ in range(2_000):
        r = random_er(rng)
        s = random_er(rng)
        assert (r > s) == ((r - s) > zero)
        # Trichotomy.
        assert sum((r > zero, r == zero, -r > zero)) == 1
        if r > zero and s > zero:
            assert r + s > zero
            assert r * s > zero


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def test_classify_positive_order_two():
    value = ExtendedReal.monomial(3, 2) * (1 + EPS) / (1 - EPS)
    assert classify(value) == OomValue(Sign.PLUS, 2)


def test_classify_negative_monomial():
    assert classify(ExtendedReal.monomial(-2, 5)) == OomValue(Sign.MINUS, 5)


def test_classify_zero():
    assert classify(ExtendedReal(0)) == OomValue.zero()


# ---------------------------------------------------------------------------
# evaluation and the sign bound
# ---------------------------------------------------------------------------


def test_evaluate_polynomial():
    assert (EPS - EPS * EPS).evaluate_at(Fraction(1, 4)) == Fraction(3, 16)


def test_evaluate_rational_function():
    assert (1 / (1 - EPS)).evaluate_at(HALF) == 2


def test_evaluate_at_pole():
    with pytest.raises(PoleAtPoint):
        (1 / (1 - EPS)).evaluate_at(1)


def test_evaluate_negative_shift_at_zero():
    with pytest.raises(PoleAtPoint):
        EPS.inverse().evaluate_at(0)


def test_sign_bound_simple():
    value = EPS - EPS * EPS
    assert value.sign_bound() == HALF
    assert value.evaluate_at(Fraction(1, 4)) > 0


def test_sign_bound_constant():
    assert ExtendedReal(2).sign_bound() == 1


def test_sign_bound_with_larger_tail():
    value = -EPS + ExtendedReal.monomial(3, 3)
    bound = value.sign_bound()
    assert bound <= Fraction(1, 4)
    assert value.evaluate_at(bound / 2) < 0


def test_sign_bound_of_zero_raises():
    with pytest.raises(ZeroValue):
        ExtendedReal(0).sign_bound()


def test_numeric_consistency_random():
    # The whole point of the bound: evaluation below it agrees with the
    # symbolic sign.
    rng = random.Random(505)
    for _ in range(1_000):
        r = random_er(rng, allow_zero=False)
        x = r.sign_bound() / 2
        numeric = r.evaluate_at(x)
        assert (numeric > 0) == (r.sign > 0)
        assert numeric != 0


# ---------------------------------------------------------------------------
# rendering and parsing
# ---------------------------------------------------------------------------


def test_render_canonical_example():
    value = ExtendedReal.from_polynomials(
        Polynomial({2: 3, 3: 3}), Polynomial({0: 1, 1: -1})
    )
    assert str(value) == "e^2 * (3 + 3*e) / (1 - e)"


def test_parse_simple_forms():
    assert parse_extended_real("0").is_zero
    assert parse_extended_real("e") == EPS
    assert parse_extended_real("e^-2") == EPS.inverse() * EPS.inverse()
    assert parse_extended_real("1/2") == ExtendedReal(Fraction(1, 2))
    assert parse_extended_real("(1+e)/(1-e)") == (1 + EPS) / (1 - EPS)
    assert parse_extended_real("-2*e^5") == ExtendedReal.monomial(-2, 5)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse_extended_real("1 + + 2")
    assert err.value.position == 4
    with pytest.raises(ParseError):
        parse_extended_real("1 / (e - e)")
    with pytest.raises(ParseError):
        parse_extended_real("q + 1")


def test_round_trip_random():
    rng = random.Random(606)
    for _ in range(500):
        value = random_er(rng)
        assert parse_extended_real(str(value)) == value


@st.composite
def extended_reals(draw):
    coeffs = draw(
        st.dictionaries(
            st.integers(min_value=0, max_value=4),
            st.fractions(min_value=-4, max_value=4, max_denominator=4),
            max_size=4,
        )
    )
    den_coeffs = draw(
        st.dictionaries(
            st.integers(min_value=0, max_value=3),
            st.fractions(min_value=-4, max_value=4, max_denominator=4),
            min_size=1,
            max_size=3,
        )
    )
    num = Polynomial(coeffs)
    den = Polynomial(den_coeffs)
    if den.is_zero:
        den = Polynomial({0: 1})
    return ExtendedReal.from_polynomials(num, den)


@given(extended_reals())
@settings(max_examples=200)
def test_round_trip_hypothesis(value):
    assert parse_extended_real(str(value)) == value


@given(extended_reals(), extended_reals())
@settings(max_examples=200)
def test_comparison_antisymmetry(a, b):
    relations = {a.compare(b), b.compare(a)}
    if a == b:
        assert relations == {Relation.EQ}
    else:
        assert relations == {Relation.LT, Relation.GT}


# ---------------------------------------------------------------------------
# reduction and hashing
# ---------------------------------------------------------------------------


def test_reduced_cancels_common_factor():
    common = Polynomial({0: 1, 1: 1})
    value = ExtendedReal.from_polynomials(
        common * Polynomial({0: 2}), common * Polynomial({0: 1, 1: -1})
    )
    reduced = value.reduced()
    assert reduced == value
    assert reduced.numerator == Polynomial({0: 2})
    assert reduced.denominator == Polynomial({0: 1, 1: -1})


def test_reduced_preserves_value_random():
    rng = random.Random(707)
    for _ in range(300):
        value = random_er(rng)
        assert value.reduced() == value


def test_hash_agrees_with_equality():
    a = (1 + EPS) / (1 - EPS)
    b = ((1 + EPS) * (2 + EPS)) / ((1 - EPS) * (2 + EPS))
    assert a == b
    assert hash(a) == hash(b)


def test_mixed_number_coercion():
    assert EPS + 1 == 1 + EPS
    assert 2 * EPS == EPS + EPS
    assert (1 - EPS) == -(EPS - 1)
    assert 1 / (1 - EPS) == (1 - EPS).inverse()
    assert EPS < Fraction(1, 1000000)
