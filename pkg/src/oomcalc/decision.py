"""Order-of-magnitude expectation and option comparison.

Expected utility is the plain sum of atom-wise products, which inherits the
linearity of the underlying algebra. For a ranking-function probability it
also has a closed form: collect, per utility sign, the minimum of
rank + utility-order, take the overall minimum as the order, and read the
sign off which of the three groups is strictly smallest
(:func:`expect_closed_form`; always equal to the direct sum).

An option is strictly preferred when its expectation is strictly greater in
the partial order; because the order is partial, "no strict preference"
covers both ties and genuine incomparability. :func:`verify_theorem3`
connects the verdict to exact arithmetic: strict preference must survive
every sampled probabilistic interpretation and utility interpretation, and
a failed direction must have an exact witness refuting it.

The integer-graded utility scale (:class:`PearlMu`) maps mu = i > 0 to
(+, -i), mu = -i to (-, -i) and mu = 0 to (0, 0). Its level numbers
n+ and n- determine an expected value that is 'ambiguous' whenever positive
and negative contributions tie at the top order; two variants of that rule
are implemented, the literal difference ``n+ - n-`` and the amended rule
that keeps the dominating level. :func:`pearl_cross_check` verifies the
four-case correspondence between the level calculation and the
order-of-magnitude expectation on any instance.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Literal, Mapping

from oomcalc.extended_reals import ExtendedReal
from oomcalc.infinity import INF, Infinity
from oomcalc.kappa import (
    ExtendedProbability,
    KappaFunction,
    OomProbability,
    OutcomeSpace,
    sample_interpretation,
)
from oomcalc.oom import (
    OomValue,
    Sign,
    StarSampler,
    StarSamplerConfig,
    ZERO as OOM_ZERO,
)

__all__ = [
    "OomUtility",
    "PearlMu",
    "AMBIGUOUS",
    "PearlValue",
    "Option",
    "DecisionProblem",
    "Preference",
    "expect",
    "expect_closed_form",
    "compare_options",
    "pearl_levels",
    "pearl_expected",
    "PearlCrossCheck",
    "pearl_cross_check",
    "InterpretationTuple",
    "DirectionCheck",
    "Theorem3Report",
    "verify_theorem3",
]


class OomUtility:
    """Total assignment of an order-of-magnitude value to every outcome."""

    __slots__ = ("_space", "_values")

    def __init__(self, space: OutcomeSpace, values: Mapping[str, OomValue]):
        space.require_total(values, "utility values")
        self._space = space
        self._values = {label: values[label] for label in space}

    @classmethod
    def constant(cls, space: OutcomeSpace, value: OomValue) -> "OomUtility":
        return cls(space, {label: value for label in space})

    @property
    def space(self) -> OutcomeSpace:
        return self._space

    @property
    def values(self) -> dict[str, OomValue]:
        return dict(self._values)

    def value_of(self, label: str) -> OomValue:
        return self._values[label]

    def __eq__(self, other) -> bool:
        if not isinstance(other, OomUtility):
            return NotImplemented
        return self._space == other._space and self._values == other._values

    # pointwise operations, used by the linearity properties
    def __add__(self, other: "OomUtility") -> "OomUtility":
        if not isinstance(other, OomUtility):
            return NotImplemented
        return OomUtility(
            self._space, {w: self._values[w] + other._values[w] for w in self._space}
        )

    def __neg__(self) -> "OomUtility":
        return OomUtility(self._space, {w: -v for w, v in self._values.items()})

    def scaled(self, factor: OomValue) -> "OomUtility":
        return OomUtility(self._space, {w: factor * v for w, v in self._values.items()})

    def __repr__(self) -> str:
        body = ", ".join(f"{w}: {v}" for w, v in self._values.items())
        return f"OomUtility({{{body}}})"


class PearlMu:
    """Integer-graded utility: mu = i means utility of order e^-i, with the
    sign of i, and mu = 0 means 'of constant order or below'."""

    __slots__ = ("_space", "_values")

    def __init__(self, space: OutcomeSpace, values: Mapping[str, int]):
        space.require_total(values, "mu values")
        for label, value in values.items():
            if not isinstance(value, int):
                raise ValueError(f"mu of {label!r} must be an int")
        self._space = space
        self._values = {label: values[label] for label in space}

    @property
    def space(self) -> OutcomeSpace:
        return self._space

    @property
    def values(self) -> dict[str, int]:
        return dict(self._values)

    def to_utility(self) -> OomUtility:
        translated = {}
        for label, mu in self._values.items():
            if mu > 0:
                translated[label] = OomValue(Sign.PLUS, -mu)
            elif mu < 0:
                translated[label] = OomValue(Sign.MINUS, mu)
            else:
                translated[label] = OomValue(Sign.ZERO, 0)
        return OomUtility(self._space, translated)

    def __repr__(self) -> str:
        body = ", ".join(f"{w}: {v}" for w, v in self._values.items())
        return f"PearlMu({{{body}}})"


class _Ambiguous:
    """Marker for a tied top order of opposite signs."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "ambiguous"


AMBIGUOUS = _Ambiguous()
PearlValue = int | _Ambiguous


@dataclass(frozen=True)
class Option:
    """One decision option: a probability and a utility over one space.

    The original ranking/mu blocks are kept when the option was built from
    them, so the level-based analysis can run alongside the expectation."""

    name: str
    probability: OomProbability
    utility: OomUtility
    kappa: KappaFunction | None = None
    mu: PearlMu | None = None

    @classmethod
    def from_kappa_mu(cls, name: str, kappa: KappaFunction, mu: PearlMu) -> "Option":
        return cls(
            name=name,
            probability=kappa.to_oom_probability(),
            utility=mu.to_utility(),
            kappa=kappa,
            mu=mu,
        )

    @property
    def expectation(self) -> OomValue:
        return expect(self.probability, self.utility)


@dataclass(frozen=True)
class DecisionProblem:
    space: OutcomeSpace
    options: tuple[Option, ...]

    def __post_init__(self):
        for option in self.options:
            if option.probability.space != self.space or option.utility.space != self.space:
                raise ValueError(f"option {option.name!r} is not defined over the problem space")


class Preference(enum.Enum):
    FIRST_PREFERRED = "FirstPreferred"
    SECOND_PREFERRED = "SecondPreferred"
    NO_STRICT_PREFERENCE = "NoStrictPreference"

    def __str__(self) -> str:
        return self.value


def expect(probability: OomProbability, utility: OomUtility) -> OomValue:
    """Expected utility: the sum over outcomes of P(w) * U(w). Order of
    summation is irrelevant (addition is commutative and associative)."""
    total = OOM_ZERO
    for label in probability.space:
        total = total + probability.atoms[label] * utility.value_of(label)
    return total


def expect_closed_form(kappa: KappaFunction, utility: OomUtility) -> OomValue:
    """Closed form of the expectation for a ranking-function probability.

    For each utility sign the relevant quantity is the minimum of
    rank(w) + order(U(w)) over the outcomes of that sign with finite rank;
    the overall order is the minimum of the three and the sign is + or -
    exactly when that group is strictly smallest. Equals :func:`expect` on
    the translated probability, on every input.
    """
    best: dict[Sign, int | Infinity] = {Sign.PLUS: INF, Sign.MINUS: INF, Sign.ZERO: INF}
    for label, rank in kappa.atoms.items():
        if isinstance(rank, Infinity):
            continue
        value = utility.value_of(label)
        candidate = rank + value.order
        if candidate < best[value.sign]:
            best[value.sign] = candidate
    u_plus, u_minus, u_zero = best[Sign.PLUS], best[Sign.MINUS], best[Sign.ZERO]
    u = min((u_plus, u_minus, u_zero), key=_order_key)
    if u_plus < u_zero and u_plus < u_minus:
        sign = Sign.PLUS
    elif u_minus < u_zero and u_minus < u_plus:
        sign = Sign.MINUS
    else:
        sign = Sign.ZERO
    if isinstance(u, Infinity):
        return OOM_ZERO
    return OomValue(sign, u)


def _order_key(order: int | Infinity):
    return float("inf") if isinstance(order, Infinity) else order


def compare_options(expectation1: OomValue, expectation2: OomValue) -> Preference:
    """Strict comparison of expectations; ties and incomparable pairs both
    yield no strict preference."""
    if expectation1 > expectation2:
        return Preference.FIRST_PREFERRED
    if expectation2 > expectation1:
        return Preference.SECOND_PREFERRED
    return Preference.NO_STRICT_PREFERENCE


# ---------------------------------------------------------------------------
# the integer-graded (mu) decision rule and its correspondence
# ---------------------------------------------------------------------------


def pearl_levels(kappa: KappaFunction, mu: PearlMu) -> tuple[int, int]:
    """The level numbers (n+, n-).

    n+ is the best surprise-adjusted positive level, max over i of
    i - rank({w : mu(w) = i}), floored at 0; n- is the mirror image over
    the negative levels. Empty levels (rank INF) contribute nothing.
    """
    positive: dict[int, set[str]] = {}
    negative: dict[int, set[str]] = {}
    for label, value in mu.values.items():
        if value >= 0:
            positive.setdefault(value, set()).add(label)
        if value <= 0:
            negative.setdefault(-value, set()).add(label)
    n_plus = 0
    for level, outcomes in positive.items():
        rank = kappa.rank(outcomes)
        if not isinstance(rank, Infinity):
            n_plus = max(n_plus, level - rank)
    n_minus = 0
    for level, outcomes in negative.items():
        rank = kappa.rank(outcomes)
        if not isinstance(rank, Infinity):
            n_minus = max(n_minus, level - rank)
    return n_plus, n_minus


def pearl_expected(
    levels: tuple[int, int], variant: Literal["original", "amended"] = "amended"
) -> PearlValue:
    """Expected value on the integer scale.

    Both variants report 'ambiguous' on a tied positive top order. The
    original rule otherwise returns n+ - n-, which understates the winning
    order; the amended rule keeps the dominating level itself.
    """
    n_plus, n_minus = levels
    if n_plus == n_minus:
        return AMBIGUOUS if n_plus > 0 else 0
    if variant == "original":
        return n_plus - n_minus
    if variant == "amended":
        return n_plus if n_plus > n_minus else -n_minus
    raise ValueError(f"unknown variant {variant!r}")


@dataclass(frozen=True)
class PearlCrossCheck:
    """Whether the level calculation and the expectation agree."""

    n_plus: int
    n_minus: int
    expected: OomValue
    actual: OomValue

    @property
    def consistent(self) -> bool:
        return self.expected == self.actual


def pearl_cross_check(kappa: KappaFunction, mu: PearlMu) -> PearlCrossCheck:
    """Check the four-case correspondence: the expectation of the
    translated utility must be (0,0), (0,-n+), (+,-n+) or (-,-n-)
    according to how n+ and n- relate."""
    n_plus, n_minus = pearl_levels(kappa, mu)
    if n_plus == n_minus == 0:
        expected = OomValue(Sign.ZERO, 0)
    elif n_plus == n_minus:
        expected = OomValue(Sign.ZERO, -n_plus)
    elif n_plus > n_minus:
        expected = OomValue(Sign.PLUS, -n_plus)
    else:
        expected = OomValue(Sign.MINUS, -n_minus)
    actual = expect(kappa.to_oom_probability(), mu.to_utility())
    return PearlCrossCheck(n_plus, n_minus, expected, actual)


# ---------------------------------------------------------------------------
# exact-arithmetic verification of option comparison
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InterpretationTuple:
    """One sampled tuple: exact probabilities, exact utilities, and the
    two exact expectations they induce."""

    probability1: ExtendedProbability
    probability2: ExtendedProbability
    utility1: Mapping[str, ExtendedReal]
    utility2: Mapping[str, ExtendedReal]
    expectation1: ExtendedReal
    expectation2: ExtendedReal


@dataclass
class DirectionCheck:
    """Result for one direction of the comparison."""

    claim: str
    holds: bool
    samples: int = 0
    failures: int = 0
    witness: InterpretationTuple | None = None
    exhausted: bool = False

    @property
    def passed(self) -> bool:
        if self.holds:
            return self.failures == 0
        return not self.exhausted

    def to_dict(self) -> dict:
        witness = None
        if self.witness is not None:
            witness = {
                "probability1": {w: str(v) for w, v in self.witness.probability1.atoms.items()},
                "probability2": {w: str(v) for w, v in self.witness.probability2.atoms.items()},
                "utility1": {w: str(v) for w, v in self.witness.utility1.items()},
                "utility2": {w: str(v) for w, v in self.witness.utility2.items()},
                "expectation1": str(self.witness.expectation1),
                "expectation2": str(self.witness.expectation2),
            }
        return {
            "claim": self.claim,
            "holds": self.holds,
            "samples": self.samples,
            "failures": self.failures,
            "witness": witness,
            "exhausted": self.exhausted,
            "passed": self.passed,
        }


@dataclass
class Theorem3Report:
    expectation1: OomValue
    expectation2: OomValue
    preference: Preference
    checks: tuple[DirectionCheck, DirectionCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> dict:
        return {
            "expectation1": str(self.expectation1),
            "expectation2": str(self.expectation2),
            "preference": str(self.preference),
            "checks": [check.to_dict() for check in self.checks],
            "passed": self.passed,
        }


def _exact_expectation(
    probability: ExtendedProbability, utility: Mapping[str, ExtendedReal]
) -> ExtendedReal:
    total = ExtendedReal(0)
    for label in probability.space:
        total = total + probability.atoms[label] * utility[label]
    return total


def verify_theorem3(
    option1: Option,
    option2: Option,
    config: StarSamplerConfig | None = None,
    samples: int = 200,
    budget: int = 10_000,
) -> Theorem3Report:
    """Check both orderings of a two-option comparison against exact
    arithmetic.

    A direction that holds (strict preference) is sampled ``samples`` times
    and must hold exactly for every tuple of probabilistic interpretations
    and utility interpretations. A direction that fails is searched for an
    exact witness tuple refuting it (up to ``budget`` draws); when the two
    options are identical any shared interpretation is such a witness, and
    the search starts with one.
    """
    if option1.probability.space != option2.probability.space:
        raise ValueError("options must share one outcome space")
    base = config if config is not None else StarSamplerConfig()
    e1 = option1.expectation
    e2 = option2.expectation
    preference = compare_options(e1, e2)
    rng = random.Random(base.seed)
    star = StarSampler(base, rng=rng)

    def draw(shared: bool = False) -> InterpretationTuple:
        p1 = sample_interpretation(option1.probability, rng)
        u1 = {w: star.sample(option1.utility.value_of(w)) for w in option1.probability.space}
        if shared:
            p2, u2 = p1, u1
        else:
            p2 = sample_interpretation(option2.probability, rng)
            u2 = {w: star.sample(option2.utility.value_of(w)) for w in option2.probability.space}
        return InterpretationTuple(
            p1, p2, u1, u2, _exact_expectation(p1, u1), _exact_expectation(p2, u2)
        )

    identical = (
        option1.probability == option2.probability and option1.utility == option2.utility
    )

    def run_direction(first_over_second: bool) -> DirectionCheck:
        if first_over_second:
            claim = f"{option1.name} > {option2.name}"
            holds = preference is Preference.FIRST_PREFERRED
        else:
            claim = f"{option2.name} > {option1.name}"
            holds = preference is Preference.SECOND_PREFERRED
        check = DirectionCheck(claim=claim, holds=holds)
        if holds:
            for _ in range(samples):
                check.samples += 1
                tup = draw()
                lhs, rhs = (
                    (tup.expectation1, tup.expectation2)
                    if first_over_second
                    else (tup.expectation2, tup.expectation1)
                )
                if not lhs > rhs:
                    check.failures += 1
                    if check.witness is None:
                        check.witness = tup
            return check
        for attempt in range(budget):
            tup = draw(shared=identical and attempt == 0)
            lhs, rhs = (
                (tup.expectation1, tup.expectation2)
                if first_over_second
                else (tup.expectation2, tup.expectation1)
            )
            if not lhs > rhs:
                check.witness = tup
                return check
        check.exhausted = True
        return check

    return Theorem3Report(
        expectation1=e1,
        expectation2=e2,
        preference=preference,
        checks=(run_direction(True), run_direction(False)),
    )
