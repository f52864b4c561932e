"""Exact arithmetic on rational functions of an infinitesimal.

The carrier is the field of rational functions in one variable ``e``, read
as a positive number smaller than every positive real. A nonzero value is
kept in the canonical shape ``e^k * num(e) / den(e)`` where ``num`` has a
nonzero constant term and ``den`` has constant term exactly 1. Under that
normalization:

* the *order* of the value is ``k`` (the leading power of ``e``),
* the *leading coefficient* is the constant term of ``num``,
* two values are equal iff cross-multiplication gives equal polynomials.

The ordering is "for all small enough positive e": a value is positive iff
its leading coefficient is positive, and ``sign_bound`` produces an explicit
threshold ``y`` such that the function has that sign everywhere on
``(0, y)``. This makes the symbolic order checkable by plain rational
evaluation.

All coefficients are exact rationals (`fractions.Fraction` at the API,
reduced integer pairs inside the kernel); nothing here floats.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterator, Mapping, Union

from oomcalc._backend import kernel as _k
from oomcalc.errors import (
    DivisionByZero,
    ParseError,
    PoleAtPoint,
    ZeroDenominator,
    ZeroValue,
)
from oomcalc.infinity import INF, Infinity

RationalLike = Union[int, Fraction]

__all__ = [
    "Relation",
    "Polynomial",
    "ExtendedReal",
    "parse_extended_real",
    "ZERO",
    "ONE",
    "EPS",
]


class Relation(enum.Enum):
    """Outcome of a comparison. The extended reals never produce
    INCOMPARABLE; the order-of-magnitude layer does."""

    LT = "LT"
    EQ = "EQ"
    GT = "GT"
    INCOMPARABLE = "INCOMPARABLE"

    def __str__(self) -> str:
        return self.value


def _pair(value: RationalLike) -> tuple:
    if isinstance(value, int):
        return (value, 1)
    if isinstance(value, Fraction):
        return (value.numerator, value.denominator)
    raise TypeError(f"expected an int or Fraction, got {type(value).__name__}")


def _frac(pair: tuple) -> Fraction:
    return Fraction(pair[0], pair[1])


class Polynomial:
    """Sparse polynomial over the rationals, indexed by degree.

    Stored coefficients are never zero; the zero polynomial stores nothing.
    """

    __slots__ = ("_terms",)

    def __init__(self, coeffs: Mapping[int, RationalLike] | None = None):
        terms = {}
        if coeffs:
            for degree, coeff in coeffs.items():
                if not isinstance(degree, int) or degree < 0:
                    raise ValueError(f"invalid degree {degree!r}")
                pair = _pair(coeff) if not isinstance(coeff, tuple) else coeff
                if pair[0] != 0:
                    terms[degree] = _k.rat_norm(pair[0], pair[1])
        self._terms = terms

    @classmethod
    def _from_kernel(cls, terms: dict) -> "Polynomial":
        poly = object.__new__(cls)
        poly._terms = terms
        return poly

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def order(self) -> int | Infinity:
        """Minimum stored degree; INF for the zero polynomial."""
        return min(self._terms) if self._terms else INF

    @property
    def coefficients(self) -> dict[int, Fraction]:
        return {d: _frac(c) for d, c in self._terms.items()}

    def coefficient(self, degree: int) -> Fraction:
        return _frac(self._terms.get(degree, (0, 1)))

    def __iter__(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self.coefficients.items()))

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial._from_kernel(_k.poly_add(self._terms, other._terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial._from_kernel(_k.poly_sub(self._terms, other._terms))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial._from_kernel(_k.poly_mul(self._terms, other._terms))

    def __neg__(self) -> "Polynomial":
        return Polynomial._from_kernel(_k.poly_neg(self._terms))

    def __str__(self) -> str:
        return _poly_str(self._terms)

    def __repr__(self) -> str:
        return f"Polynomial({self!s})"


def _poly_str(terms: dict) -> str:
    if not terms:
        return "0"
    parts: list[str] = []
    for degree in sorted(terms):
        p, q = terms[degree]
        coeff = Fraction(abs(p), q)
        if degree == 0:
            body = str(coeff)
        elif coeff == 1:
            body = "e" if degree == 1 else f"e^{degree}"
        else:
            body = f"{coeff}*e" if degree == 1 else f"{coeff}*e^{degree}"
        if not parts:
            parts.append(body if p > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if p > 0 else f"- {body}")
    return " ".join(parts)


class ExtendedReal:
    """A rational function of the infinitesimal, in canonical form."""

    __slots__ = ("_rf", "_key")

    def __init__(self, value: RationalLike = 0):
        pair = _pair(value)
        if pair[0] == 0:
            self._rf = None
        else:
            self._rf = (0, {0: _k.rat_norm(pair[0], pair[1])}, {0: (1, 1)})
        self._key = None

    # -- construction ----------------------------------------------------

    @classmethod
    def _wrap(cls, rf) -> "ExtendedReal":
        value = object.__new__(cls)
        value._rf = rf
        value._key = None
        return value

    @classmethod
    def from_polynomials(cls, num: Polynomial, den: Polynomial | None = None) -> "ExtendedReal":
        """Canonicalize num/den. Raises ZeroDenominator on a zero den."""
        den_terms = den._terms if den is not None else {0: (1, 1)}
        try:
            rf = _k.rf_canon(num._terms, den_terms)
        except ZeroDivisionError:
            raise ZeroDenominator("denominator polynomial is zero") from None
        return cls._wrap(rf)

    @classmethod
    def monomial(cls, coeff: RationalLike, order: int) -> "ExtendedReal":
        """coeff * e**order (zero if coeff is zero)."""
        pair = _pair(coeff)
        if pair[0] == 0:
            return cls._wrap(None)
        return cls._wrap((order, {0: _k.rat_norm(pair[0], pair[1])}, {0: (1, 1)}))

    @classmethod
    def parse(cls, text: str) -> "ExtendedReal":
        return parse_extended_real(text)

    # -- structure -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self._rf is None

    @property
    def order(self) -> int | Infinity:
        """Leading power of e; INF for zero."""
        return INF if self._rf is None else self._rf[0]

    @property
    def leading_coefficient(self) -> Fraction:
        if self._rf is None:
            raise ZeroValue("zero has no leading coefficient")
        return _frac(self._rf[1][0])

    @property
    def sign(self) -> int:
        return _k.rf_sign(self._rf)

    @property
    def numerator(self) -> Polynomial:
        if self._rf is None:
            return Polynomial()
        return Polynomial._from_kernel(dict(self._rf[1]))

    @property
    def denominator(self) -> Polynomial:
        if self._rf is None:
            return Polynomial({0: 1})
        return Polynomial._from_kernel(dict(self._rf[2]))

    # -- field arithmetic --------------------------------------------------

    @staticmethod
    def _coerce(other) -> "ExtendedReal | None":
        if isinstance(other, ExtendedReal):
            return other
        if isinstance(other, (int, Fraction)):
            return ExtendedReal(other)
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return ExtendedReal._wrap(_k.rf_add(self._rf, rhs._rf))

    __radd__ = __add__

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return ExtendedReal._wrap(_k.rf_sub(self._rf, rhs._rf))

    def __rsub__(self, other):
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return ExtendedReal._wrap(_k.rf_sub(lhs._rf, self._rf))

    def __mul__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return ExtendedReal._wrap(_k.rf_mul(self._rf, rhs._rf))

    __rmul__ = __mul__

    def __truediv__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if rhs._rf is None:
            raise DivisionByZero("division by the zero value")
        return ExtendedReal._wrap(_k.rf_div(self._rf, rhs._rf))

    def __rtruediv__(self, other):
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        if self._rf is None:
            raise DivisionByZero("division by the zero value")
        return ExtendedReal._wrap(_k.rf_div(lhs._rf, self._rf))

    def __neg__(self) -> "ExtendedReal":
        return ExtendedReal._wrap(_k.rf_neg(self._rf))

    def __pos__(self) -> "ExtendedReal":
        return self

    @property
    def is_invertible(self) -> bool:
        return self._rf is not None

    def inverse(self) -> "ExtendedReal":
        if self._rf is None:
            raise DivisionByZero("inverse of the zero value")
        return ExtendedReal._wrap(_k.rf_inv(self._rf))

    def __pow__(self, exponent: int) -> "ExtendedReal":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ExtendedReal(1)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- order and equality ------------------------------------------------

    def compare(self, other: "ExtendedReal | RationalLike") -> Relation:
        rhs = self._coerce(other)
        if rhs is None:
            raise TypeError(f"cannot compare with {type(other).__name__}")
        c = _k.rf_cmp(self._rf, rhs._rf)
        return Relation.GT if c > 0 else Relation.LT if c < 0 else Relation.EQ

    def __eq__(self, other) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return _k.rf_equal(self._rf, rhs._rf)

    def __lt__(self, other) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return _k.rf_cmp(self._rf, rhs._rf) < 0

    def __le__(self, other) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return _k.rf_cmp(self._rf, rhs._rf) <= 0

    def __gt__(self, other) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return _k.rf_cmp(self._rf, rhs._rf) > 0

    def __ge__(self, other) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return _k.rf_cmp(self._rf, rhs._rf) >= 0

    def __hash__(self) -> int:
        # Hash through the gcd-reduced form, which is unique per value.
        if self._key is None:
            reduced = self.reduced()
            rf = reduced._rf
            if rf is None:
                self._key = ()
            else:
                self._key = (
                    rf[0],
                    tuple(sorted(rf[1].items())),
                    tuple(sorted(rf[2].items())),
                )
        return hash(self._key)

    # -- analysis ----------------------------------------------------------

    def evaluate_at(self, x: RationalLike) -> Fraction:
        """Exact value at e = x. Raises PoleAtPoint when den(x) = 0."""
        try:
            return _frac(_k.rf_eval(self._rf, _k.rat_norm(*_pair(x))))
        except ZeroDivisionError:
            raise PoleAtPoint(f"denominator vanishes at {x}") from None

    def sign_bound(self) -> Fraction:
        """A positive y <= 1 such that the function keeps the sign of its
        leading coefficient on the whole interval (0, y).

        Uses the conservative coefficient-sum bound: on (0, y) with y <= 1
        the tail of each polynomial is dominated by its constant term, so
        neither num nor den can cross zero there.
        """
        if self._rf is None:
            raise ZeroValue("zero has no sign bound")
        bound = Fraction(1)
        for poly in (self._rf[1], self._rf[2]):
            lead = abs(_frac(poly[0]))
            tail = sum((abs(_frac(c)) for d, c in poly.items() if d > 0), Fraction(0))
            if tail:
                bound = min(bound, lead / (lead + tail))
        return bound

    def reduced(self) -> "ExtendedReal":
        """Equal value with num and den divided by their polynomial gcd.

        Canonical arithmetic never requires this; it is a normalization
        pass that bounds coefficient growth in long computations.
        """
        if self._rf is None:
            return self
        shift, num, den = self._rf
        g = _poly_gcd(num, den)
        if max(g) == 0:
            return self
        num2, _ = _poly_divmod(num, g)
        den2, _ = _poly_divmod(den, g)
        canon = _k.rf_canon(num2, den2)
        return ExtendedReal._wrap((canon[0] + shift, canon[1], canon[2]))

    # -- rendering -----------------------------------------------------------

    def __str__(self) -> str:
        if self._rf is None:
            return "0"
        shift, num, den = self._rf
        pieces = []
        if shift != 0:
            pieces.append("e" if shift == 1 else f"e^{shift}")
        if num != {0: (1, 1)} or not pieces:
            body = _poly_str(num)
            if len(num) > 1 or num[0][0] < 0:
                body = f"({body})"
            pieces.append(body)
        text = " * ".join(pieces)
        if den != {0: (1, 1)}:
            text += f" / ({_poly_str(den)})"
        return text

    def __repr__(self) -> str:
        return f"ExtendedReal({self!s})"


# ---------------------------------------------------------------------------
# polynomial gcd (only used by reduced(); plain Euclid over the rationals)
# ---------------------------------------------------------------------------


def _poly_divmod(f: dict, g: dict) -> tuple[dict, dict]:
    quo: dict = {}
    rem = dict(f)
    gd = max(g)
    glead = g[gd]
    while rem:
        rd = max(rem)
        if rd < gd:
            break
        factor = _k.rat_div(rem[rd], glead)
        quo[rd - gd] = factor
        for d, c in g.items():
            target = d + rd - gd
            cur = rem.get(target, (0, 1))
            new = _k.rat_sub(cur, _k.rat_mul(factor, c))
            if new[0] == 0:
                rem.pop(target, None)
            else:
                rem[target] = new
    return quo, rem


def _poly_gcd(f: dict, g: dict) -> dict:
    a, b = dict(f), dict(g)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    lead = a[max(a)]
    if lead != (1, 1):
        a = _k.poly_scale(a, _k.rat_inv(lead))
    return a


# ---------------------------------------------------------------------------
# expression parsing (the same grammar the renderer emits)
# ---------------------------------------------------------------------------

_OPS = set("+-*/^()")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch == "e" and (i + 1 == n or not text[i + 1].isalnum()):
            tokens.append(("e", "e", i))
            i += 1
        elif ch in _OPS:
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _ErParser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind: str | None = None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> ExtendedReal:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return value

    def expr(self) -> ExtendedReal:
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> ExtendedReal:
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero:
                    raise ParseError("division by zero", pos)
                value = value / rhs
        return value

    def unary(self) -> ExtendedReal:
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> ExtendedReal:
        value = self.atom()
        if self.peek()[0] == "^":
            _, _, pos = self.take()
            negative = False
            if self.peek()[0] == "-":
                self.take()
                negative = True
            exponent = int(self.take("int")[1])
            if negative:
                exponent = -exponent
                if value.is_zero:
                    raise ParseError("negative power of zero", pos)
            value = value**exponent
        return value

    def atom(self) -> ExtendedReal:
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return ExtendedReal(int(tok[1]))
        if tok[0] == "e":
            self.take()
            return EPS
        if tok[0] == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", tok[2])


def parse_extended_real(text: str) -> ExtendedReal:
    """Parse expression text (integers, ``e``, ``+ - * / ^``, parentheses)
    into an exact value. Round-trips the output of ``str``."""
    return _ErParser(text).parse()


ZERO = ExtendedReal(0)
ONE = ExtendedReal(1)
EPS = ExtendedReal.monomial(1, 1)
