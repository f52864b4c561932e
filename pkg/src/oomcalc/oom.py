"""The sign/order algebra of orders of magnitude.

A value is a pair (sign, order): ``(+, n)`` stands for the positive
extended reals of order ``e^n``, ``(-, n)`` for the negative ones, and
``(0, n)`` for "order at least n, sign unknown" (the closure needed because
opposite signs at the same order can cancel to anything smaller). The zero
element is ``(0, INF)``, whose star set is exactly ``{0}``.

Addition lets the lower order dominate and combines signs on ties;
multiplication multiplies signs and adds orders. The structure is
commutative, associative and distributive, but it is not a ring: additive
inverses do not exist, since ``1 + (-1) = (0, 0)`` is not the zero element.
The strict order ``a > b`` (sign of ``a - b`` is ``+``) is transitive but
genuinely partial, so a four-valued :func:`compare` is provided instead of
a guessed completion.

Every value ``a`` denotes the set of extended reals that classify to it
(its star set). :class:`StarSampler` draws members of that set, which is
how the test harnesses turn identities in this algebra into exact
statements about rational functions.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from oomcalc.errors import NotInvertible
from oomcalc.extended_reals import ONE as ER_ONE, ExtendedReal, Relation
from oomcalc.infinity import INF, Infinity

__all__ = [
    "Sign",
    "OomValue",
    "ZERO",
    "ONE",
    "MINUS_ONE",
    "classify",
    "compare",
    "parse_oom",
    "window",
    "StarSamplerConfig",
    "StarSampler",
]


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"
    ZERO = "0"

    def times(self, other: "Sign") -> "Sign":
        if self is Sign.ZERO or other is Sign.ZERO:
            return Sign.ZERO
        return Sign.PLUS if self is other else Sign.MINUS

    def plus(self, other: "Sign") -> "Sign":
        return self if self is other else Sign.ZERO

    def negated(self) -> "Sign":
        if self is Sign.PLUS:
            return Sign.MINUS
        if self is Sign.MINUS:
            return Sign.PLUS
        return Sign.ZERO

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class OomValue:
    """An order-of-magnitude value (sign, order)."""

    sign: Sign
    order: int | Infinity

    def __post_init__(self):
        if isinstance(self.order, Infinity):
            if self.sign is not Sign.ZERO:
                raise ValueError("infinite order requires sign 0")
        elif not isinstance(self.order, int):
            raise TypeError(f"order must be an int or INF, got {self.order!r}")

    # -- distinguished elements -------------------------------------------

    @classmethod
    def zero(cls) -> "OomValue":
        return ZERO

    @classmethod
    def one(cls) -> "OomValue":
        return ONE

    @classmethod
    def minus_one(cls) -> "OomValue":
        return MINUS_ONE

    @property
    def is_zero(self) -> bool:
        return isinstance(self.order, Infinity)

    @property
    def is_invertible(self) -> bool:
        """True outside the sign-zero band (where star sets contain 0)."""
        return self.sign is not Sign.ZERO

    # -- algebra ------------------------------------------------------------

    def __add__(self, other: "OomValue") -> "OomValue":
        if not isinstance(other, OomValue):
            return NotImplemented
        if self.order < other.order:
            return self
        if other.order < self.order:
            return other
        return OomValue(self.sign.plus(other.sign), self.order)

    def __mul__(self, other: "OomValue") -> "OomValue":
        if not isinstance(other, OomValue):
            return NotImplemented
        return OomValue(self.sign.times(other.sign), self.order + other.order)

    def __neg__(self) -> "OomValue":
        return OomValue(self.sign.negated(), self.order)

    def __sub__(self, other: "OomValue") -> "OomValue":
        if not isinstance(other, OomValue):
            return NotImplemented
        return self + (-other)

    def inverse(self) -> "OomValue":
        if self.sign is Sign.ZERO:
            raise NotInvertible(f"{self} has sign 0 and no inverse")
        return OomValue(self.sign, -self.order)

    def __truediv__(self, other: "OomValue") -> "OomValue":
        if not isinstance(other, OomValue):
            return NotImplemented
        return self * other.inverse()

    # -- the strict partial order -------------------------------------------

    def __gt__(self, other: "OomValue") -> bool:
        if not isinstance(other, OomValue):
            return NotImplemented
        return (self - other).sign is Sign.PLUS

    def __lt__(self, other: "OomValue") -> bool:
        if not isinstance(other, OomValue):
            return NotImplemented
        return (other - self).sign is Sign.PLUS

    # -- star-set membership --------------------------------------------------

    def contains(self, r: ExtendedReal) -> bool:
        """Is the extended real a member of this value's star set?"""
        if self.sign is not Sign.ZERO:
            return classify(r) == self
        return r.order >= self.order

    # -- rendering ---------------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return f"({self.sign},{self.order})"

    def __repr__(self) -> str:
        return f"OomValue({self!s})"


ZERO = OomValue(Sign.ZERO, INF)
ONE = OomValue(Sign.PLUS, 0)
MINUS_ONE = OomValue(Sign.MINUS, 0)

_SIGNS = {"+": Sign.PLUS, "-": Sign.MINUS, "0": Sign.ZERO}


def parse_oom(text: str) -> OomValue:
    """Parse a literal: ``(+,n)``, ``(-,n)``, ``(0,n)``, ``0``; the aliases
    ``1`` and ``-1`` and the explicit ``(0,inf)`` are accepted too."""
    s = text.strip()
    if s == "0":
        return ZERO
    if s == "1":
        return ONE
    if s == "-1":
        return MINUS_ONE
    if s.startswith("(") and s.endswith(")"):
        body = s[1:-1]
        parts = body.split(",")
        if len(parts) == 2:
            sign = _SIGNS.get(parts[0].strip())
            order_text = parts[1].strip()
            if sign is not None:
                if order_text in ("inf", "INF"):
                    if sign is Sign.ZERO:
                        return ZERO
                    raise ValueError(f"invalid literal {text!r}: infinite order requires sign 0")
                try:
                    return OomValue(sign, int(order_text))
                except ValueError:
                    pass
    raise ValueError(f"invalid order-of-magnitude literal {text!r}")


def classify(r: ExtendedReal) -> OomValue:
    """Map an extended real to its (sign, order) class. Zero maps to the
    zero element; the image never meets the rest of the sign-zero band."""
    if r.is_zero:
        return ZERO
    sign = Sign.PLUS if r.sign > 0 else Sign.MINUS
    return OomValue(sign, r.order)


def compare(a: OomValue, b: OomValue) -> Relation:
    """Four-valued comparison: the order is partial, so distinct values can
    be incomparable (their difference has sign 0)."""
    if a == b:
        return Relation.EQ
    diff_sign = (a - b).sign
    if diff_sign is Sign.PLUS:
        return Relation.GT
    if diff_sign is Sign.MINUS:
        return Relation.LT
    return Relation.INCOMPARABLE


def window(min_order: int = -6, max_order: int = 6) -> list[OomValue]:
    """All values with orders in [min_order, max_order], plus zero."""
    values = [
        OomValue(sign, order)
        for sign in (Sign.PLUS, Sign.MINUS, Sign.ZERO)
        for order in range(min_order, max_order + 1)
    ]
    values.append(ZERO)
    return values


# ---------------------------------------------------------------------------
# star-set sampling
# ---------------------------------------------------------------------------

DEFAULT_POOL: tuple[Fraction, ...] = (
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(-2),
    Fraction(1, 2),
    Fraction(-1, 2),
    Fraction(3),
    Fraction(-3),
)

ESCALATION_POOL: tuple[Fraction, ...] = (
    Fraction(1, 3),
    Fraction(-1, 3),
    Fraction(4),
    Fraction(-4),
)


@dataclass(frozen=True)
class StarSamplerConfig:
    """Controls how star-set members are drawn.

    ``pool`` holds the candidate leading coefficients (must contain both
    signs, never zero), ``max_offset`` bounds the extra order used for
    sign-zero values, ``max_tail_terms`` bounds the lower-order garnish on
    signed values, and ``seed`` fixes the stream.
    """

    pool: tuple[Fraction, ...] = DEFAULT_POOL
    max_offset: int = 3
    max_tail_terms: int = 2
    seed: int = 0

    def __post_init__(self):
        if not self.pool:
            raise ValueError("coefficient pool must not be empty")
        if any(c == 0 for c in self.pool):
            raise ValueError("coefficient pool must not contain zero")
        if not any(c > 0 for c in self.pool) or not any(c < 0 for c in self.pool):
            raise ValueError("coefficient pool must contain both signs")
        if self.max_offset < 0 or self.max_tail_terms < 0:
            raise ValueError("offsets and tail counts must be non-negative")

    def escalated(self) -> "StarSamplerConfig":
        """The same config with the wider coefficient pool used by witness
        searches after half their budget."""
        extra = tuple(c for c in ESCALATION_POOL if c not in self.pool)
        return StarSamplerConfig(
            pool=self.pool + extra,
            max_offset=self.max_offset,
            max_tail_terms=self.max_tail_terms,
            seed=self.seed,
        )


class StarSampler:
    """Seeded generator of star-set members.

    Signed values get ``lam * e^order * (1 + tail)`` with a sign-matched
    leading coefficient ``lam`` from the pool; sign-zero values get either
    exactly 0 or a signed monomial of order ``order + k`` for a small
    ``k >= 0``. Every draw satisfies ``value.contains(draw)``.
    """

    def __init__(self, config: StarSamplerConfig | None = None, rng: random.Random | None = None):
        self.config = config if config is not None else StarSamplerConfig()
        self._rng = rng if rng is not None else random.Random(self.config.seed)

    def sample(self, value: OomValue) -> ExtendedReal:
        rng = self._rng
        cfg = self.config
        if value.is_zero:
            return ExtendedReal(0)
        if value.sign is Sign.ZERO:
            # One slot for exact zero, one per (sign, offset) combination.
            slot = rng.randrange(2 * (cfg.max_offset + 1) + 1)
            if slot == 0:
                return ExtendedReal(0)
            slot -= 1
            sign = 1 if slot % 2 == 0 else -1
            offset = slot // 2
            lam = sign * abs(rng.choice(cfg.pool))
            return ExtendedReal.monomial(lam, value.order + offset)
        matching = [c for c in cfg.pool if (c > 0) == (value.sign is Sign.PLUS)]
        lam = rng.choice(matching)
        factor = ER_ONE
        for _ in range(rng.randint(0, cfg.max_tail_terms)):
            degree = rng.randint(1, max(1, cfg.max_offset))
            factor = factor + ExtendedReal.monomial(rng.choice(cfg.pool), degree)
        return ExtendedReal.monomial(lam, value.order) * factor

    def sample_many(self, values: Iterable[OomValue]) -> Iterator[ExtendedReal]:
        for value in values:
            yield self.sample(value)
