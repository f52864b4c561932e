"""Laws and pathologies of the sign/order algebra, plus star-set sampling."""

import itertools
import random

import pytest

from oomcalc.errors import NotInvertible
from oomcalc.extended_reals import EPS, ExtendedReal, Relation
from oomcalc.infinity import INF
from oomcalc.oom import (
    MINUS_ONE,
    ONE,
    ZERO,
    OomValue,
    Sign,
    StarSampler,
    StarSamplerConfig,
    classify,
    compare,
    parse_oom,
    window,
)

SMALL_WINDOW = window(-2, 2)


def V(sign: str, order) -> OomValue:
    return OomValue({"+": Sign.PLUS, "-": Sign.MINUS, "0": Sign.ZERO}[sign], order)


# ---------------------------------------------------------------------------
# constants and construction
# ---------------------------------------------------------------------------


def test_distinguished_elements():
    assert ZERO == OomValue(Sign.ZERO, INF)
    assert ONE == V("+", 0)
    assert MINUS_ONE == V("-", 0)
    assert ZERO.is_zero and not ONE.is_zero


def test_infinite_order_requires_sign_zero():
    with pytest.raises(ValueError):
        OomValue(Sign.PLUS, INF)


# ---------------------------------------------------------------------------
# multiplication, addition, negation, inverse
# ---------------------------------------------------------------------------


def test_multiplication_examples():
    assert V("-", 2) * ONE == V("-", 2)
    for a in SMALL_WINDOW:
        assert a * ZERO == ZERO
        assert a * ONE == a
    assert V("-", 2) * V("-", 3) == V("+", 5)


def test_addition_examples():
    assert ONE + MINUS_ONE == V("0", 0)
    assert V("+", 1) + V("-", 3) == V("+", 1)
    assert V("-", 2) + V("+", 2) == V("0", 2)
    for a in SMALL_WINDOW:
        assert a + ZERO == a


def test_negation_examples():
    assert -V("+", 3) == V("-", 3)
    assert -V("0", 2) == V("0", 2)
    assert -ZERO == ZERO


def test_inverse_examples():
    assert V("+", 3).inverse() == V("+", -3)
    assert MINUS_ONE.inverse() == MINUS_ONE
    with pytest.raises(NotInvertible):
        V("0", 1).inverse()
    with pytest.raises(NotInvertible):
        ZERO.inverse()
    for a in SMALL_WINDOW:
        if a.is_invertible:
            assert a * a.inverse() == ONE


# ---------------------------------------------------------------------------
# algebraic laws over the exhaustive window
# ---------------------------------------------------------------------------


def test_associativity_commutativity_distributivity():
    values = SMALL_WINDOW
    for a, b in itertools.product(values, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
    for a, b, c in itertools.product(values, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert (a + b) * c == a * c + b * c


def test_not_a_ring():
    assert ONE + MINUS_ONE == V("0", 0)
    assert ONE + MINUS_ONE != ZERO


def test_fraction_identities():
    invertible = [v for v in SMALL_WINDOW if v.is_invertible]
    rng = random.Random(11)
    for _ in range(500):
        a = rng.choice(SMALL_WINDOW)
        c = rng.choice(SMALL_WINDOW)
        b = rng.choice(invertible)
        d = rng.choice(invertible)
        assert a / b == (a * d) / (b * d)
        assert a / b + c / b == (a + c) / b
        assert a / b + c / d == (a * d + b * c) / (b * d)
        assert a / b - c / d == (a * d - b * c) / (b * d)


# ---------------------------------------------------------------------------
# the strict partial order
# ---------------------------------------------------------------------------


def test_incomparable_with_minus_one():
    tied = V("0", 0)
    assert not tied > MINUS_ONE
    assert not tied < MINUS_ONE
    assert compare(tied, MINUS_ONE) is Relation.INCOMPARABLE


def test_order_examples():
    assert V("0", -2) > V("-", -5)
    assert V("+", 1) > ZERO
    assert not ZERO > V("+", 1)


def test_order_properties():
    for a in SMALL_WINDOW:
        assert not a > a
        assert (a > ZERO) == (ZERO > -a)
    positives = [a for a in SMALL_WINDOW if a > ZERO]
    for a, b in itertools.product(positives, repeat=2):
        assert a + b > ZERO
        assert a * b > ZERO
    for a, b, c in itertools.product(SMALL_WINDOW, repeat=3):
        if a > b and b > c:
            assert a > c


def test_monotonicity_failure_witness():
    a, b, c = ONE, ZERO, MINUS_ONE
    assert a > b
    assert not a + c > b + c
    assert a + c == V("0", 0)
    assert b + c == MINUS_ONE


def test_compare_is_exclusive():
    for a, b in itertools.product(SMALL_WINDOW, repeat=2):
        relation = compare(a, b)
        assert (relation is Relation.GT) == (a > b)
        assert (relation is Relation.LT) == (b > a)
        assert (relation is Relation.EQ) == (a == b)
        assert not (a > b and b > a)


# ---------------------------------------------------------------------------
# star-set membership and sampling
# ---------------------------------------------------------------------------


def test_membership_examples():
    assert V("-", 3).contains(ExtendedReal.monomial(-2, 3))
    assert V("0", 5).contains(ExtendedReal(0))
    assert not V("+", 1).contains(EPS * EPS)
    assert ZERO.contains(ExtendedReal(0))
    assert not ZERO.contains(EPS)
    assert V("0", 1).contains(EPS * EPS)
    assert not V("0", 1).contains(ExtendedReal(1))


def test_classification_image_misses_sign_zero_band():
    sampler = StarSampler(StarSamplerConfig(seed=3))
    for value in window(-3, 3):
        draw = sampler.sample(value)
        mapped = classify(draw)
        assert mapped.sign is not Sign.ZERO or mapped.is_zero


def test_sampler_respects_membership():
    sampler = StarSampler(StarSamplerConfig(seed=9))
    for value in window(-4, 4):
        for _ in range(25):
            assert value.contains(sampler.sample(value))


def test_sampler_zero_is_exact():
    sampler = StarSampler()
    assert sampler.sample(ZERO).is_zero


def test_sampler_sign_zero_covers_all_kinds():
    value = V("0", 1)
    seen_zero = seen_positive = seen_negative = False
    sampler = StarSampler(StarSamplerConfig(seed=17))
    for _ in range(300):
        draw = sampler.sample(value)
        assert value.contains(draw)
        if draw.is_zero:
            seen_zero = True
        elif draw.sign > 0:
            seen_positive = True
        else:
            seen_negative = True
    assert seen_zero and seen_positive and seen_negative


def test_sampler_deterministic_under_seed():
    a = StarSampler(StarSamplerConfig(seed=123))
    b = StarSampler(StarSamplerConfig(seed=123))
    values = window(-3, 3)
    assert [a.sample(v) for v in values] == [b.sample(v) for v in values]


def test_sampler_config_validation():
    from fractions import Fraction

    with pytest.raises(ValueError):
        StarSamplerConfig(pool=())
    with pytest.raises(ValueError):
        StarSamplerConfig(pool=(Fraction(1), Fraction(2)))
    with pytest.raises(ValueError):
        StarSamplerConfig(pool=(Fraction(1), Fraction(0), Fraction(-1)))


# ---------------------------------------------------------------------------
# the operations agree with their star-set semantics (sampled)
# ---------------------------------------------------------------------------


def test_operations_sound_for_sampled_members():
    rng = random.Random(31)
    sampler = StarSampler(StarSamplerConfig(seed=5))
    values = window(-2, 2)
    for _ in range(1_500):
        a = rng.choice(values)
        b = rng.choice(values)
        r = sampler.sample(a)
        s = sampler.sample(b)
        assert (a + b).contains(r + s)
        assert (a * b).contains(r * s)
        assert (-a).contains(-r)
        if a.is_invertible:
            assert a.inverse().contains(r.inverse())


def test_ordering_sound_and_complete_for_sampled_members():
    sampler = StarSampler(StarSamplerConfig(seed=7))
    values = window(-2, 2)
    for a in values:
        for b in values:
            if a > b:
                for _ in range(40):
                    assert sampler.sample(a) > sampler.sample(b)
            elif a != b:
                # Some interpretation pair must fail strict dominance.
                found = False
                for _ in range(2_000):
                    if not sampler.sample(a) > sampler.sample(b):
                        found = True
                        break
                assert found, f"no ordering witness for {a} vs {b}"


# ---------------------------------------------------------------------------
# literals
# ---------------------------------------------------------------------------


def test_parse_oom_literals():
    assert parse_oom("(+,2)") == V("+", 2)
    assert parse_oom("(-,-4)") == V("-", -4)
    assert parse_oom("(0,0)") == V("0", 0)
    assert parse_oom("0") == ZERO
    assert parse_oom("1") == ONE
    assert parse_oom("-1") == MINUS_ONE
    assert parse_oom("(0,inf)") == ZERO
    assert parse_oom(" ( + , 3 ) ") == V("+", 3)


def test_parse_oom_rejects_garbage():
    for text in ("", "(+)", "(+,x)", "(1,2)", "(+,inf)", "2"):
        with pytest.raises(ValueError):
            parse_oom(text)


def test_literal_round_trip():
    for value in window(-6, 6):
        assert parse_oom(str(value)) == value
