"""Ranking functions, order-of-magnitude probability, and interpretations."""

import random
from fractions import Fraction

import pytest

from oomcalc.errors import (
    ConditionImpossible,
    ConditionNotInvertible,
    InvalidDistribution,
    UnknownOutcome,
)
from oomcalc.extended_reals import EPS, ExtendedReal, parse_extended_real
from oomcalc.infinity import INF
from oomcalc.kappa import (
    ExtendedProbability,
    KappaFunction,
    OomProbability,
    OutcomeSpace,
    possibility_embedding,
    sample_interpretation,
)
from oomcalc.oom import ONE, ZERO, OomValue, Sign

from helpers import random_event, random_kappa, random_space

W12 = OutcomeSpace(["w1", "w2"])
W123 = OutcomeSpace(["w1", "w2", "w3"])


# ---------------------------------------------------------------------------
# outcome spaces
# ---------------------------------------------------------------------------


def test_space_validation():
    with pytest.raises(ValueError):
        OutcomeSpace([])
    with pytest.raises(ValueError):
        OutcomeSpace(["w", "w"])
    with pytest.raises(UnknownOutcome):
        W12.event(["w1", "nope"])


def test_kappa_requires_total_coverage_and_a_zero_rank():
    with pytest.raises(UnknownOutcome):
        KappaFunction(W12, {"w1": 0})
    with pytest.raises(UnknownOutcome):
        KappaFunction(W12, {"w1": 0, "w2": 0, "w3": 0})
    with pytest.raises(ValueError):
        KappaFunction(W12, {"w1": 1, "w2": 2})
    with pytest.raises(ValueError):
        KappaFunction(W12, {"w1": 0, "w2": -1})


# ---------------------------------------------------------------------------
# event ranks and conditioning
# ---------------------------------------------------------------------------


def test_rank_examples():
    kappa = KappaFunction(W12, {"w1": 0, "w2": 0})
    assert kappa.rank({"w1"}) == 0
    assert kappa.rank(set()) is INF
    kappa3 = KappaFunction(W123, {"w1": 2, "w2": 5, "w3": 0})
    assert kappa3.rank({"w1", "w2"}) == 2
    assert kappa3.rank({"w1", "w2", "w3"}) == 0


def test_conditional_rank():
    kappa = KappaFunction(W123, {"w1": 3, "w2": 1, "w3": 0})
    # rank(A&B) = 3, rank(B) = 1.
    assert kappa.conditional({"w1"}, {"w1", "w2"}) == 2
    # A containing B conditions to 0.
    assert kappa.conditional({"w1", "w2", "w3"}, {"w2"}) == 0


def test_conditional_on_impossible_event():
    kappa = KappaFunction(W12, {"w1": 0, "w2": INF})
    with pytest.raises(ConditionImpossible):
        kappa.conditional({"w1"}, {"w2"})
    # Conditioning with an impossible intersection stays defined.
    assert kappa.conditional({"w2"}, {"w1"}) is INF


def test_kappa_axioms_random():
    rng = random.Random(71)
    for _ in range(1_000):
        space = random_space(rng)
        kappa = random_kappa(rng, space)
        a = random_event(rng, space)
        b = random_event(rng, space)
        if not a & b:
            assert kappa.rank(a | b) == min(
                kappa.rank(a), kappa.rank(b), key=lambda v: float("inf") if v is INF else v
            )
        if a <= b:
            assert kappa.rank(a) >= kappa.rank(b)
        rank_b = kappa.rank(b)
        if rank_b is not INF:
            assert kappa.rank(a & b) == kappa.conditional(a, b) + rank_b


# ---------------------------------------------------------------------------
# the two labellings of one structure
# ---------------------------------------------------------------------------


def test_kappa_to_oom_examples():
    kappa = KappaFunction(W12, {"w1": 0, "w2": 3})
    probability = kappa.to_oom_probability()
    assert probability.atoms == {"w1": ONE, "w2": OomValue(Sign.PLUS, 3)}
    assert probability.to_kappa() == kappa


def test_round_trip_with_infinite_rank():
    kappa = KappaFunction(W123, {"w1": 0, "w2": 2, "w3": INF})
    assert kappa.to_oom_probability().to_kappa() == kappa


def test_transport_of_structure_small():
    def embed(rank):
        return ZERO if rank is INF else OomValue(Sign.PLUS, rank)

    ranks = list(range(9)) + [INF]
    for m in ranks:
        for n in ranks:
            assert embed(m) + embed(n) == embed(min(m, n, key=lambda v: float("inf") if v is INF else v))
            assert embed(m) * embed(n) == embed(m + n)
            if m is not INF and n is not INF:
                assert (m < n) == (embed(m) > embed(n))


def test_oom_probability_validation():
    with pytest.raises(ValueError):
        OomProbability(W12, {"w1": OomValue(Sign.PLUS, 1), "w2": OomValue(Sign.PLUS, 2)})
    with pytest.raises(ValueError):
        OomProbability(W12, {"w1": ONE, "w2": OomValue(Sign.MINUS, 1)})
    with pytest.raises(ValueError):
        OomProbability(W12, {"w1": ONE, "w2": OomValue(Sign.PLUS, -1)})


def test_event_probability_examples():
    probability = OomProbability(W12, {"w1": ONE, "w2": OomValue(Sign.PLUS, 2)})
    assert probability.probability({"w2"}) == OomValue(Sign.PLUS, 2)
    assert probability.probability({"w1", "w2"}) == ONE
    assert probability.probability(set()) == ZERO
    assert probability.conditional({"w2"}, {"w1", "w2"}) == OomValue(Sign.PLUS, 2)


def test_conditional_requires_invertible_condition():
    kappa = KappaFunction(W12, {"w1": 0, "w2": INF})
    probability = kappa.to_oom_probability()
    with pytest.raises(ConditionNotInvertible):
        probability.conditional({"w1"}, {"w2"})


def test_probability_axioms_random():
    rng = random.Random(73)
    for _ in range(500):
        space = random_space(rng)
        probability = random_kappa(rng, space).to_oom_probability()
        assert probability.probability(set()) == ZERO
        assert probability.probability(space.labels) == ONE
        a = random_event(rng, space)
        b = random_event(rng, space)
        if not a & b:
            assert probability.probability(a | b) == probability.probability(
                a
            ) + probability.probability(b)
        if a <= b:
            # Monotone under the total order on the unit band.
            pa, pb = probability.probability(a), probability.probability(b)
            assert pa == pb or pb > pa


# ---------------------------------------------------------------------------
# probabilistic interpretations
# ---------------------------------------------------------------------------


class ScriptedRng:
    """Stands in for random.Random when a test wants fixed choices."""

    def __init__(self, choices):
        self._choices = list(choices)

    def choice(self, _pool):
        return self._choices.pop(0)


def test_interpretation_hand_computed():
    probability = OomProbability(W12, {"w1": ONE, "w2": OomValue(Sign.PLUS, 1)})
    interp = sample_interpretation(probability, ScriptedRng([Fraction(1), Fraction(2)]))
    assert interp.atoms["w1"] == parse_extended_real("1 / (1 + 2*e)")
    assert interp.atoms["w2"] == parse_extended_real("2*e / (1 + 2*e)")
    assert interp.probability(W12.labels) == ExtendedReal(1)
    assert interp.classify() == probability


def test_interpretation_singleton():
    space = OutcomeSpace(["only"])
    probability = OomProbability(space, {"only": ONE})
    interp = sample_interpretation(probability, 5)
    assert interp.atoms["only"] == ExtendedReal(1)


def test_interpretation_zero_atom_is_exact_zero():
    kappa = KappaFunction(W12, {"w1": 0, "w2": INF})
    interp = sample_interpretation(kappa.to_oom_probability(), 5)
    assert interp.atoms["w2"].is_zero


def test_round_trip_random():
    rng = random.Random(79)
    for i in range(300):
        space = random_space(rng)
        probability = random_kappa(rng, space).to_oom_probability()
        interp = sample_interpretation(probability, rng)
        assert interp.probability(space.labels) == ExtendedReal(1)
        assert interp.classify() == probability


def test_conditional_compatibility_random():
    # Classification commutes with conditioning whenever the condition is
    # invertible at the order-of-magnitude level.
    rng = random.Random(83)
    checked = 0
    while checked < 300:
        space = random_space(rng)
        probability = random_kappa(rng, space).to_oom_probability()
        a = random_event(rng, space)
        b = random_event(rng, space)
        if not probability.probability(b).is_invertible:
            continue
        interp = sample_interpretation(probability, rng)
        from oomcalc.oom import classify

        assert classify(interp.conditional(a, b)) == probability.conditional(a, b)
        checked += 1


def test_classify_examples():
    half = ExtendedReal(Fraction(1, 2))
    distribution = ExtendedProbability(W12, {"w1": half, "w2": half})
    assert distribution.classify().atoms == {"w1": ONE, "w2": ONE}
    skewed = ExtendedProbability(
        W12, {"w1": 1 - EPS * EPS, "w2": EPS * EPS}
    )
    assert skewed.classify().atoms == {"w1": ONE, "w2": OomValue(Sign.PLUS, 2)}


def test_distribution_validation():
    with pytest.raises(InvalidDistribution):
        ExtendedProbability(W12, {"w1": ExtendedReal(1), "w2": ExtendedReal(1)})
    with pytest.raises(InvalidDistribution):
        ExtendedProbability(W12, {"w1": ExtendedReal(2), "w2": ExtendedReal(-1)})
    # Infinitesimally off the simplex is still off the simplex.
    with pytest.raises(InvalidDistribution):
        ExtendedProbability(W12, {"w1": ExtendedReal(1), "w2": EPS})


# ---------------------------------------------------------------------------
# the possibility embedding
# ---------------------------------------------------------------------------


def test_possibility_embedding_values():
    kappa = KappaFunction(W123, {"w1": 0, "w2": 3, "w3": INF})
    degrees = possibility_embedding(kappa)
    assert degrees == {"w1": 1, "w2": Fraction(1, 8), "w3": 0}


def test_possibility_embedding_reverses_order():
    rng = random.Random(89)
    for _ in range(200):
        space = random_space(rng)
        kappa = random_kappa(rng, space)
        degrees = possibility_embedding(kappa)
        labels = list(space)
        for a in labels:
            for b in labels:
                ra, rb = kappa.atoms[a], kappa.atoms[b]
                ra_key = float("inf") if ra is INF else ra
                rb_key = float("inf") if rb is INF else rb
                assert (ra_key < rb_key) == (degrees[a] > degrees[b])
