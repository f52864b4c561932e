"""Ranking functions and order-of-magnitude probability.

A kappa function ranks the atoms of a finite outcome space by degrees of
surprise: rank 0 is unsurprising, higher ranks are progressively more
surprising, and rank INF marks impossibility (a mild generalization of
Spohn's natural conditional functions, which keep non-empty events finite).
Events take the minimum rank of their atoms; conditioning subtracts,
``rank(A|B) = rank(A&B) - rank(B)``.

Probability valued in the sign/order algebra lands in the totally ordered
band ``[0,1]`` there: ``(+, m)`` with m >= 0, plus the zero element. That
band under (min-of-order, sum-of-order, order-reversal) is the same
structure as (N ∪ {INF}, min, +, <), so kappa functions and
order-of-magnitude probability functions are two labellings of one thing;
:meth:`KappaFunction.to_oom_probability` and
:meth:`OomProbability.to_kappa` convert between them.

The connection to exact arithmetic: an order-of-magnitude probability
stands for the family of extended-real probability functions whose
atom-wise classification recovers it. :func:`sample_interpretation` draws
one (atoms ``lam * e^rank`` divided by their exact sum, so additivity to 1
is exact), and :meth:`ExtendedProbability.classify` goes back.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Mapping

from oomcalc.errors import (
    ConditionImpossible,
    ConditionNotInvertible,
    InvalidDistribution,
    UnknownOutcome,
)
from oomcalc.extended_reals import ExtendedReal
from oomcalc.infinity import INF, Infinity
from oomcalc.oom import ONE as OOM_ONE, OomValue, Sign, ZERO as OOM_ZERO, classify

__all__ = [
    "OutcomeSpace",
    "KappaFunction",
    "OomProbability",
    "ExtendedProbability",
    "sample_interpretation",
    "possibility_embedding",
    "PROBABILITY_POOL",
]

Rank = Infinity | int


class OutcomeSpace:
    """Finite set of mutually exclusive, exhaustive outcome labels."""

    __slots__ = ("_labels", "_order")

    def __init__(self, labels: Iterable[str]):
        labels = tuple(labels)
        if not labels:
            raise ValueError("outcome space must not be empty")
        if len(set(labels)) != len(labels):
            raise ValueError("outcome labels must be unique")
        self._labels = labels
        self._order = {label: i for i, label in enumerate(labels)}

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    def __iter__(self):
        return iter(self._labels)

    def __len__(self) -> int:
        return len(self._labels)

    def __contains__(self, label: str) -> bool:
        return label in self._order

    def __eq__(self, other) -> bool:
        if not isinstance(other, OutcomeSpace):
            return NotImplemented
        return self._labels == other._labels

    def __hash__(self) -> int:
        return hash(self._labels)

    def event(self, labels: Iterable[str]) -> frozenset[str]:
        """Validate an event: every label must belong to the space."""
        event = frozenset(labels)
        unknown = [label for label in event if label not in self._order]
        if unknown:
            raise UnknownOutcome(f"unknown outcome(s) {sorted(unknown)}")
        return event

    def require_total(self, mapping: Mapping[str, object], what: str) -> None:
        missing = [label for label in self._labels if label not in mapping]
        extra = [label for label in mapping if label not in self._order]
        if missing or extra:
            detail = []
            if missing:
                detail.append(f"missing {missing}")
            if extra:
                detail.append(f"unknown {extra}")
            raise UnknownOutcome(f"{what} must cover the space exactly: " + ", ".join(detail))

    def __repr__(self) -> str:
        return f"OutcomeSpace({list(self._labels)!r})"


class KappaFunction:
    """Atom ranks in N ∪ {INF}; events take the minimum over their atoms."""

    __slots__ = ("_space", "_ranks")

    def __init__(self, space: OutcomeSpace, ranks: Mapping[str, Rank]):
        space.require_total(ranks, "kappa ranks")
        for label, rank in ranks.items():
            if isinstance(rank, Infinity):
                continue
            if not isinstance(rank, int) or rank < 0:
                raise ValueError(f"rank of {label!r} must be a non-negative int or INF")
        if not any(rank == 0 for rank in ranks.values()):
            raise ValueError("some outcome must have rank 0")
        self._space = space
        self._ranks = {label: ranks[label] for label in space}

    @property
    def space(self) -> OutcomeSpace:
        return self._space

    @property
    def atoms(self) -> dict[str, Rank]:
        return dict(self._ranks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KappaFunction):
            return NotImplemented
        return self._space == other._space and self._ranks == other._ranks

    def rank(self, event: Iterable[str]) -> Rank:
        """Minimum atom rank over the event; INF for the empty event."""
        members = self._space.event(event)
        result: Rank = INF
        for label in members:
            value = self._ranks[label]
            if value < result:
                result = value
        return result

    def conditional(self, a: Iterable[str], b: Iterable[str]) -> Rank:
        """rank(A|B) = rank(A&B) - rank(B); undefined on impossible B."""
        b_members = self._space.event(b)
        rank_b = self.rank(b_members)
        if isinstance(rank_b, Infinity):
            raise ConditionImpossible("conditioning event has rank INF")
        rank_ab = self.rank(self._space.event(a) & b_members)
        return rank_ab - rank_b

    def to_oom_probability(self) -> "OomProbability":
        """Relabel rank m as (+, m) and INF as the zero element."""
        atoms = {
            label: (OOM_ZERO if isinstance(rank, Infinity) else OomValue(Sign.PLUS, rank))
            for label, rank in self._ranks.items()
        }
        return OomProbability(self._space, atoms)

    def __repr__(self) -> str:
        body = ", ".join(f"{label}: {rank}" for label, rank in self._ranks.items())
        return f"KappaFunction({{{body}}})"


class OomProbability:
    """Probability with values in the totally ordered band
    {(+, m): m >= 0} ∪ {zero}; events sum their atoms."""

    __slots__ = ("_space", "_atoms")

    def __init__(self, space: OutcomeSpace, atoms: Mapping[str, OomValue]):
        space.require_total(atoms, "probability atoms")
        for label, value in atoms.items():
            ok = value.is_zero or (
                value.sign is Sign.PLUS and isinstance(value.order, int) and value.order >= 0
            )
            if not ok:
                raise ValueError(f"atom {label!r} = {value} is outside the unit band")
        if not any(atoms[label] == OOM_ONE for label in space):
            raise ValueError("some atom must equal (+,0), otherwise the space misses mass 1")
        self._space = space
        self._atoms = {label: atoms[label] for label in space}

    @property
    def space(self) -> OutcomeSpace:
        return self._space

    @property
    def atoms(self) -> dict[str, OomValue]:
        return dict(self._atoms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OomProbability):
            return NotImplemented
        return self._space == other._space and self._atoms == other._atoms

    def probability(self, event: Iterable[str]) -> OomValue:
        members = self._space.event(event)
        total = OOM_ZERO
        for label in members:
            total = total + self._atoms[label]
        return total

    def conditional(self, a: Iterable[str], b: Iterable[str]) -> OomValue:
        """P(A|B) = P(A&B) / P(B); requires P(B) invertible (sign +)."""
        b_members = self._space.event(b)
        p_b = self.probability(b_members)
        if not p_b.is_invertible:
            raise ConditionNotInvertible(f"P(B) = {p_b} has sign 0")
        p_ab = self.probability(self._space.event(a) & b_members)
        return p_ab / p_b

    def to_kappa(self) -> KappaFunction:
        ranks: dict[str, Rank] = {}
        for label, value in self._atoms.items():
            ranks[label] = INF if value.is_zero else value.order
        return KappaFunction(self._space, ranks)

    def __repr__(self) -> str:
        body = ", ".join(f"{label}: {value}" for label, value in self._atoms.items())
        return f"OomProbability({{{body}}})"


class ExtendedProbability:
    """Exact probability function with extended-real atom values."""

    __slots__ = ("_space", "_atoms")

    def __init__(self, space: OutcomeSpace, atoms: Mapping[str, ExtendedReal]):
        space.require_total(atoms, "probability atoms")
        total = ExtendedReal(0)
        one = ExtendedReal(1)
        for label in space:
            value = atoms[label]
            if value < 0 or value > one:
                raise InvalidDistribution(f"atom {label!r} = {value} is outside [0, 1]")
            total = total + value
        if total != one:
            raise InvalidDistribution(f"atom values sum to {total}, not 1")
        self._space = space
        self._atoms = {label: atoms[label] for label in space}

    @property
    def space(self) -> OutcomeSpace:
        return self._space

    @property
    def atoms(self) -> dict[str, ExtendedReal]:
        return dict(self._atoms)

    def probability(self, event: Iterable[str]) -> ExtendedReal:
        members = self._space.event(event)
        total = ExtendedReal(0)
        for label in members:
            total = total + self._atoms[label]
        return total

    def conditional(self, a: Iterable[str], b: Iterable[str]) -> ExtendedReal:
        b_members = self._space.event(b)
        p_b = self.probability(b_members)
        p_ab = self.probability(self._space.event(a) & b_members)
        return p_ab / p_b

    def classify(self) -> OomProbability:
        """Atom-wise classification; always lands on a valid
        order-of-magnitude probability."""
        return OomProbability(
            self._space, {label: classify(value) for label, value in self._atoms.items()}
        )

    def __repr__(self) -> str:
        body = ", ".join(f"{label}: {value}" for label, value in self._atoms.items())
        return f"ExtendedProbability({{{body}}})"


PROBABILITY_POOL: tuple[Fraction, ...] = (
    Fraction(1),
    Fraction(2),
    Fraction(3),
    Fraction(1, 2),
    Fraction(5, 2),
)


def sample_interpretation(
    probability: OomProbability,
    rng: random.Random | int = 0,
    pool: tuple[Fraction, ...] = PROBABILITY_POOL,
) -> ExtendedProbability:
    """Draw a probabilistic interpretation of an order-of-magnitude
    probability: atom (+, m) becomes ``lam * e^m / Z`` with a positive
    coefficient from the pool and Z the exact sum over atoms, so the result
    is additive to exactly 1 and classifies back to the input."""
    if isinstance(rng, int):
        rng = random.Random(rng)
    terms: dict[str, ExtendedReal] = {}
    total = ExtendedReal(0)
    for label, value in probability.atoms.items():
        if value.is_zero:
            terms[label] = ExtendedReal(0)
        else:
            term = ExtendedReal.monomial(rng.choice(pool), value.order)
            terms[label] = term
            total = total + term
    atoms = {
        label: (term if term.is_zero else term / total) for label, term in terms.items()
    }
    return ExtendedProbability(probability.space, atoms)


def possibility_embedding(kappa: KappaFunction) -> dict[str, Fraction]:
    """Embed ranks into possibility degrees via rank -> 2**(-rank); the
    map is order-reversing and sends INF to 0."""
    degrees = {}
    for label, rank in kappa.atoms.items():
        degrees[label] = Fraction(0) if isinstance(rank, Infinity) else Fraction(1, 2**rank)
    return degrees
