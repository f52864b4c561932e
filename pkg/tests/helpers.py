"""Shared random generators for the test suite.

Everything takes an explicit ``random.Random`` so the bulk property loops
stay reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

from oomcalc.extended_reals import ExtendedReal, Polynomial
from oomcalc.infinity import INF
from oomcalc.kappa import KappaFunction, OutcomeSpace
from oomcalc.oom import OomValue, Sign

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

COEFFS = [Fraction(n) for n in (-3, -2, -1, 1, 2, 3)] + [Fraction(1, 2), Fraction(-1, 2)]


def random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    num = rng.randint(-4, 4)
    while nonzero and num == 0:
        num = rng.randint(-4, 4)
    return Fraction(num, rng.randint(1, 4))


def random_polynomial(
    rng: random.Random, max_degree: int = 3, allow_zero: bool = True
) -> Polynomial:
    coeffs = {}
    for degree in range(max_degree + 1):
        if rng.random() < 0.5:
            coeffs[degree] = rng.choice(COEFFS)
    if not coeffs and not allow_zero:
        coeffs[rng.randint(0, max_degree)] = rng.choice(COEFFS)
    return Polynomial(coeffs)


def random_er(rng: random.Random, allow_zero: bool = True) -> ExtendedReal:
    if allow_zero and rng.random() < 0.1:
        return ExtendedReal(0)
    num = random_polynomial(rng, max_degree=2, allow_zero=False)
    den = random_polynomial(rng, max_degree=2, allow_zero=False)
    value = ExtendedReal.from_polynomials(num, den)
    if not allow_zero and value.is_zero:
        return ExtendedReal(1)
    return value


def random_oom(
    rng: random.Random,
    min_order: int = -5,
    max_order: int = 5,
    zero_weight: float = 0.1,
) -> OomValue:
    if rng.random() < zero_weight:
        return OomValue.zero()
    sign = rng.choice((Sign.PLUS, Sign.MINUS, Sign.ZERO))
    return OomValue(sign, rng.randint(min_order, max_order))


def random_space(rng: random.Random, max_size: int = 6) -> OutcomeSpace:
    size = rng.randint(1, max_size)
    return OutcomeSpace([f"w{i}" for i in range(1, size + 1)])


def random_kappa(
    rng: random.Random, space: OutcomeSpace, max_rank: int = 6, inf_weight: float = 0.1
) -> KappaFunction:
    labels = list(space)
    ranks = {}
    for label in labels:
        if rng.random() < inf_weight:
            ranks[label] = INF
        else:
            ranks[label] = rng.randint(0, max_rank)
    ranks[rng.choice(labels)] = 0
    return KappaFunction(space, ranks)


def random_event(rng: random.Random, space: OutcomeSpace) -> frozenset[str]:
    return frozenset(label for label in space if rng.random() < 0.5)
