"""Symbol-linear arithmetic formulas and the sampling harnesses.

A formula is a tree over distinct symbols with four constructors: negation,
multiplicative inverse, addition and multiplication (division is sugar for
multiply-by-inverse). Each symbol occurs at most once; when the concrete
syntax repeats a name, every occurrence becomes a fresh symbol and the name
table records which indices share a source name. That matches the intended
reading of something like ``(a + b)/c > c - d``: the two ``c`` mentions are
independent unknowns that happen to carry equal order-of-magnitude
information.

Formulas evaluate over any carrier providing ``+``, ``*``, unary ``-``,
``is_invertible`` and ``inverse()``: order-of-magnitude values, extended
reals, and finite sets of extended reals all qualify. Inverting a
non-invertible value yields the distinguished ``UNDEFINED`` result, which
propagates upward.

The harnesses connect the two levels. When a strict inequality between two
evaluated formulas holds at the order-of-magnitude level, ``verify_gt``
checks it against exact arithmetic on sampled interpretations (soundness);
when it fails to hold, ``search_counterexample`` hunts for an
interpretation pair witnessing the failure (completeness).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from oomcalc.errors import (
    MissingSymbol,
    NonLinearFormula,
    ParseError,
    UndefinedOperand,
    ZeroInSet,
)
from oomcalc.extended_reals import ExtendedReal, Relation
from oomcalc.oom import OomValue, Sign, StarSampler, StarSamplerConfig, compare

__all__ = [
    "UNDEFINED",
    "Symbol",
    "Neg",
    "Inv",
    "Add",
    "Mul",
    "Formula",
    "parse_formula",
    "render",
    "evaluate",
    "assignment_from_names",
    "FiniteSet",
    "sample_instantiation",
    "InterpretationWitness",
    "GtReport",
    "verify_gt",
    "search_counterexample",
    "check_gt_claim",
    "undefined_witness",
    "random_formula",
    "random_instantiation",
]


class _Undefined:
    """Result of inverting a non-invertible value."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "undefined"


UNDEFINED = _Undefined()


# ---------------------------------------------------------------------------
# the formula tree
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Symbol:
    index: int

    @property
    def symbols(self) -> frozenset[int]:
        return frozenset((self.index,))


@dataclass(frozen=True)
class Neg:
    child: "Formula"

    @property
    def symbols(self) -> frozenset[int]:
        return self.child.symbols


@dataclass(frozen=True)
class Inv:
    child: "Formula"

    @property
    def symbols(self) -> frozenset[int]:
        return self.child.symbols


@dataclass(frozen=True)
class Add:
    left: "Formula"
    right: "Formula"
    symbols: frozenset[int] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        shared = self.left.symbols & self.right.symbols
        if shared:
            raise NonLinearFormula(f"symbols {sorted(shared)} occur on both sides")
        object.__setattr__(self, "symbols", self.left.symbols | self.right.symbols)


@dataclass(frozen=True)
class Mul:
    left: "Formula"
    right: "Formula"
    symbols: frozenset[int] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        shared = self.left.symbols & self.right.symbols
        if shared:
            raise NonLinearFormula(f"symbols {sorted(shared)} occur on both sides")
        object.__setattr__(self, "symbols", self.left.symbols | self.right.symbols)


Formula = Union[Symbol, Neg, Inv, Add, Mul]


# ---------------------------------------------------------------------------
# parsing and rendering
# ---------------------------------------------------------------------------


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _FormulaParser:
    """Recursive descent over: expr := term (('+'|'-') term)*;
    term := unary (('*'|'/') unary)*; unary := '-' unary | postfix;
    postfix := atom ('^-1')*; atom := NAME | '(' expr ')'."""

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.names: dict[int, str] = {}
        self.next_index = 1

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind: str | None = None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> tuple[Formula, dict[int, str]]:
        formula = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return formula, self.names

    def expr(self) -> Formula:
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            node = Add(node, rhs if op == "+" else Neg(rhs))
        return node

    def term(self) -> Formula:
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            rhs = self.unary()
            node = Mul(node, rhs if op == "*" else Inv(rhs))
        return node

    def unary(self) -> Formula:
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.unary())
        return self.postfix()

    def postfix(self) -> Formula:
        node = self.atom()
        while self.peek()[0] == "^":
            _, _, pos = self.take()
            if self.peek()[0] != "-":
                raise ParseError("only the inverse power ^-1 is supported", pos)
            self.take()
            if self.peek()[0] != "int" or self.peek()[1] != "1":
                raise ParseError("only the inverse power ^-1 is supported", pos)
            self.take()
            node = Inv(node)
        return node

    def atom(self) -> Formula:
        tok = self.peek()
        if tok[0] == "name":
            self.take()
            index = self.next_index
            self.next_index += 1
            self.names[index] = tok[1]
            return Symbol(index)
        if tok[0] == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", tok[2])


def parse_formula(text: str) -> tuple[Formula, dict[int, str]]:
    """Parse expression text into a formula plus its name table.

    Every name occurrence becomes a fresh symbol index (in left-to-right
    order, starting at 1); the table maps index to source name so repeated
    names can be instantiated with equal order-of-magnitude values.
    """
    return _FormulaParser(text).parse()


_PREC_ADD, _PREC_MUL, _PREC_UNARY, _PREC_ATOM = 1, 2, 3, 4


def render(formula: Formula, names: Mapping[int, str] | None = None) -> str:
    """Concrete syntax for a formula; reparsing reproduces the structure."""

    def name_of(index: int) -> str:
        if names is not None and index in names:
            return names[index]
        return f"x{index}"

    def go(node: Formula, level: int) -> str:
        if isinstance(node, Symbol):
            return name_of(node.index)
        if isinstance(node, Neg):
            text = "-" + go(node.child, _PREC_UNARY)
            return f"({text})" if level > _PREC_UNARY else text
        if isinstance(node, Inv):
            return go(node.child, _PREC_ATOM) + "^-1"
        if isinstance(node, Add):
            if isinstance(node.right, Neg):
                text = f"{go(node.left, _PREC_ADD)} - {go(node.right.child, _PREC_MUL)}"
            else:
                text = f"{go(node.left, _PREC_ADD)} + {go(node.right, _PREC_MUL)}"
            return f"({text})" if level > _PREC_ADD else text
        if isinstance(node, Mul):
            if isinstance(node.right, Inv):
                text = f"{go(node.left, _PREC_MUL)} / {go(node.right.child, _PREC_UNARY)}"
            else:
                text = f"{go(node.left, _PREC_MUL)} * {go(node.right, _PREC_UNARY)}"
            return f"({text})" if level > _PREC_MUL else text
        raise TypeError(f"not a formula node: {node!r}")

    return go(formula, _PREC_ADD)


# ---------------------------------------------------------------------------
# evaluation over any carrier
# ---------------------------------------------------------------------------


def evaluate(formula: Formula, assignment: Mapping[int, object]):
    """Evaluate under an instantiation; returns a carrier value or
    ``UNDEFINED``. Raises MissingSymbol when the assignment is partial."""
    if isinstance(formula, Symbol):
        try:
            return assignment[formula.index]
        except KeyError:
            raise MissingSymbol(formula.index) from None
    if isinstance(formula, Neg):
        value = evaluate(formula.child, assignment)
        return UNDEFINED if value is UNDEFINED else -value
    if isinstance(formula, Inv):
        value = evaluate(formula.child, assignment)
        if value is UNDEFINED or not value.is_invertible:
            return UNDEFINED
        return value.inverse()
    if isinstance(formula, Add):
        left = evaluate(formula.left, assignment)
        right = evaluate(formula.right, assignment)
        if left is UNDEFINED or right is UNDEFINED:
            return UNDEFINED
        return left + right
    if isinstance(formula, Mul):
        left = evaluate(formula.left, assignment)
        right = evaluate(formula.right, assignment)
        if left is UNDEFINED or right is UNDEFINED:
            return UNDEFINED
        return left * right
    raise TypeError(f"not a formula node: {formula!r}")


def assignment_from_names(
    names: Mapping[int, str], env: Mapping[str, object]
) -> dict[int, object]:
    """Instantiate every symbol index from a name-keyed environment, so
    repeated source names receive equal values."""
    assignment = {}
    for index, name in names.items():
        if name not in env:
            raise MissingSymbol(name)
        assignment[index] = env[name]
    return assignment


# ---------------------------------------------------------------------------
# finite sets of extended reals (a carrier without distributivity)
# ---------------------------------------------------------------------------


class FiniteSet:
    """Explicit finite set of distinct extended reals with pointwise
    arithmetic: S + T is all sums s + t, and so on."""

    __slots__ = ("_elements",)

    def __init__(self, values: Iterable[ExtendedReal | int | Fraction] = ()):
        elements: list[ExtendedReal] = []
        for value in values:
            if not isinstance(value, ExtendedReal):
                value = ExtendedReal(value)
            if not any(value == existing for existing in elements):
                elements.append(value)
        self._elements = tuple(sorted(elements))

    @classmethod
    def of(cls, *values) -> "FiniteSet":
        return cls(values)

    @property
    def elements(self) -> tuple[ExtendedReal, ...]:
        return self._elements

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[ExtendedReal]:
        return iter(self._elements)

    def __contains__(self, value) -> bool:
        if not isinstance(value, ExtendedReal):
            value = ExtendedReal(value)
        return any(value == element for element in self._elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteSet):
            return NotImplemented
        return self._elements == other._elements

    def __add__(self, other: "FiniteSet") -> "FiniteSet":
        if not isinstance(other, FiniteSet):
            return NotImplemented
        return FiniteSet(s + t for s in self for t in other)

    def __mul__(self, other: "FiniteSet") -> "FiniteSet":
        if not isinstance(other, FiniteSet):
            return NotImplemented
        return FiniteSet(s * t for s in self for t in other)

    def __neg__(self) -> "FiniteSet":
        return FiniteSet(-s for s in self)

    @property
    def is_invertible(self) -> bool:
        return all(not element.is_zero for element in self._elements)

    def inverse(self) -> "FiniteSet":
        if not self.is_invertible:
            raise ZeroInSet("cannot invert a set containing zero")
        return FiniteSet(element.inverse() for element in self._elements)

    def __str__(self) -> str:
        return "{" + ", ".join(str(element) for element in self._elements) + "}"

    def __repr__(self) -> str:
        return f"FiniteSet({self!s})"


# ---------------------------------------------------------------------------
# interpretations and the theorem harnesses
# ---------------------------------------------------------------------------


def sample_instantiation(
    instantiation: Mapping[int, OomValue], sampler: StarSampler
) -> dict[int, ExtendedReal]:
    """Draw one interpretation: an independent star-set member for every
    symbol (indices sharing a source name still draw independently)."""
    return {index: sampler.sample(value) for index, value in sorted(instantiation.items())}


@dataclass(frozen=True)
class InterpretationWitness:
    """A sampled interpretation pair together with both exact values."""

    lhs_assignment: Mapping[int, ExtendedReal]
    rhs_assignment: Mapping[int, ExtendedReal]
    lhs_value: ExtendedReal
    rhs_value: ExtendedReal

    @property
    def relation(self) -> Relation:
        return self.lhs_value.compare(self.rhs_value)


@dataclass
class GtReport:
    """Outcome of checking one strict-inequality claim."""

    claim: str
    oom_lhs: OomValue
    oom_rhs: OomValue
    relation: Relation
    samples: int = 0
    failures: int = 0
    witness: InterpretationWitness | None = None
    exhausted: bool = False

    @property
    def passed(self) -> bool:
        if self.relation is Relation.GT:
            return self.failures == 0
        return not self.exhausted

    def to_dict(self) -> dict:
        witness = None
        if self.witness is not None:
            witness = {
                "lhs_assignment": {k: str(v) for k, v in sorted(self.witness.lhs_assignment.items())},
                "rhs_assignment": {k: str(v) for k, v in sorted(self.witness.rhs_assignment.items())},
                "lhs_value": str(self.witness.lhs_value),
                "rhs_value": str(self.witness.rhs_value),
                "relation": str(self.witness.relation),
            }
        return {
            "claim": self.claim,
            "oom_lhs": str(self.oom_lhs),
            "oom_rhs": str(self.oom_rhs),
            "relation": str(self.relation),
            "samples": self.samples,
            "failures": self.failures,
            "witness": witness,
            "exhausted": self.exhausted,
            "passed": self.passed,
        }


def _evaluated_pair(lhs, lhs_inst, rhs, rhs_inst) -> tuple[OomValue, OomValue]:
    lhs_value = evaluate(lhs, lhs_inst)
    rhs_value = evaluate(rhs, rhs_inst)
    if lhs_value is UNDEFINED or rhs_value is UNDEFINED:
        raise UndefinedOperand("one side of the claim evaluates to undefined")
    return lhs_value, rhs_value


def _claim_text(lhs: Formula, rhs: Formula) -> str:
    rhs_names = {index: f"y{pos}" for pos, index in enumerate(sorted(rhs.symbols), start=1)}
    return f"{render(lhs)} > {render(rhs, rhs_names)}"


def verify_gt(
    lhs: Formula,
    lhs_inst: Mapping[int, OomValue],
    rhs: Formula,
    rhs_inst: Mapping[int, OomValue],
    config: StarSamplerConfig | None = None,
    samples: int = 100,
) -> GtReport:
    """Soundness check: when the claim holds at the order-of-magnitude
    level, every sampled interpretation pair must satisfy it exactly.

    A failure (recorded with its witness) would falsify the implementation,
    not the claim. When the claim does not hold, the report comes back with
    zero samples; refutation is ``search_counterexample``'s job.
    """
    lhs_value, rhs_value = _evaluated_pair(lhs, lhs_inst, rhs, rhs_inst)
    report = GtReport(
        claim=_claim_text(lhs, rhs),
        oom_lhs=lhs_value,
        oom_rhs=rhs_value,
        relation=compare(lhs_value, rhs_value),
    )
    if report.relation is not Relation.GT:
        return report
    sampler = StarSampler(config)
    for _ in range(samples):
        report.samples += 1
        r = sample_instantiation(lhs_inst, sampler)
        s = sample_instantiation(rhs_inst, sampler)
        fv = evaluate(lhs, r)
        gv = evaluate(rhs, s)
        if fv is UNDEFINED or gv is UNDEFINED or not fv > gv:
            report.failures += 1
            if report.witness is None and fv is not UNDEFINED and gv is not UNDEFINED:
                report.witness = InterpretationWitness(r, s, fv, gv)
    return report


def search_counterexample(
    lhs: Formula,
    lhs_inst: Mapping[int, OomValue],
    rhs: Formula,
    rhs_inst: Mapping[int, OomValue],
    config: StarSamplerConfig | None = None,
    budget: int = 10_000,
) -> InterpretationWitness | None:
    """Completeness check: when the claim fails at the order-of-magnitude
    level, some interpretation pair must fail it exactly. Returns the first
    such witness, or None when the budget is exhausted (which the theory
    says should never happen and therefore flags a defect worth a look).

    The coefficient pool widens after half the budget: cancellation
    witnesses need matched coefficients, so the default pool stays small
    but is not a hard limit.
    """
    lhs_value, rhs_value = _evaluated_pair(lhs, lhs_inst, rhs, rhs_inst)
    if compare(lhs_value, rhs_value) is Relation.GT:
        raise ValueError("the claim holds; there is no counterexample to search for")
    base = config if config is not None else StarSamplerConfig()
    rng = random.Random(base.seed)
    stages = ((base, budget // 2), (base.escalated(), budget - budget // 2))
    for stage_config, stage_budget in stages:
        sampler = StarSampler(stage_config, rng=rng)
        for _ in range(stage_budget):
            r = sample_instantiation(lhs_inst, sampler)
            s = sample_instantiation(rhs_inst, sampler)
            fv = evaluate(lhs, r)
            gv = evaluate(rhs, s)
            if fv is UNDEFINED or gv is UNDEFINED:
                continue
            if not fv > gv:
                return InterpretationWitness(r, s, fv, gv)
    return None


def check_gt_claim(
    lhs: Formula,
    lhs_inst: Mapping[int, OomValue],
    rhs: Formula,
    rhs_inst: Mapping[int, OomValue],
    config: StarSamplerConfig | None = None,
    samples: int = 100,
    budget: int = 10_000,
) -> GtReport:
    """Run whichever harness applies: soundness sampling when the claim
    holds, witness search when it does not."""
    report = verify_gt(lhs, lhs_inst, rhs, rhs_inst, config, samples)
    if report.relation is not Relation.GT:
        witness = search_counterexample(lhs, lhs_inst, rhs, rhs_inst, config, budget)
        report.witness = witness
        report.exhausted = witness is None
    return report


def undefined_witness(
    formula: Formula,
    instantiation: Mapping[int, OomValue],
    config: StarSamplerConfig | None = None,
    budget: int = 2_000,
) -> dict[int, ExtendedReal] | None:
    """Find an interpretation on which the formula evaluates to undefined.

    Requires the order-of-magnitude evaluation to be undefined already (an
    inverse of a sign-zero value somewhere in the tree). The first phase is
    directed: sign-zero symbols draw exact 0 half the time and every draw
    is a bare monomial with a tiny coefficient pool, which makes the exact
    cancellations an inverse needs far more likely. The second phase falls
    back to ordinary sampling.
    """
    if evaluate(formula, instantiation) is not UNDEFINED:
        raise ValueError("the instantiation does not evaluate to undefined")
    base = config if config is not None else StarSamplerConfig()
    rng = random.Random(base.seed)
    directed_pools: tuple[tuple[Fraction, ...], ...] = (
        (Fraction(1), Fraction(-1)),
        (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2)),
        base.pool,
    )
    directed_budget = budget // 2
    for attempt in range(directed_budget):
        pool = directed_pools[min(attempt * len(directed_pools) // max(1, directed_budget), 2)]
        assignment = {}
        for index, value in sorted(instantiation.items()):
            if value.is_zero:
                assignment[index] = ExtendedReal(0)
            elif value.sign is Sign.ZERO:
                if rng.random() < 0.5:
                    assignment[index] = ExtendedReal(0)
                else:
                    lam = rng.choice(pool)
                    assignment[index] = ExtendedReal.monomial(
                        lam, value.order + rng.randint(0, base.max_offset)
                    )
            else:
                matching = [c for c in pool if (c > 0) == (value.sign is Sign.PLUS)]
                assignment[index] = ExtendedReal.monomial(rng.choice(matching), value.order)
        if evaluate(formula, assignment) is UNDEFINED:
            return assignment
    sampler = StarSampler(base, rng=rng)
    for _ in range(budget - directed_budget):
        assignment = sample_instantiation(instantiation, sampler)
        if evaluate(formula, assignment) is UNDEFINED:
            return assignment
    return None


# ---------------------------------------------------------------------------
# random generation for the property suites
# ---------------------------------------------------------------------------


def random_formula(rng: random.Random, max_depth: int = 3, first_index: int = 1) -> Formula:
    """A random formula with fresh symbols numbered from ``first_index``."""
    counter = [first_index]

    def build(depth: int) -> Formula:
        if depth <= 0:
            index = counter[0]
            counter[0] += 1
            return Symbol(index)
        kind = rng.choices(
            ("symbol", "neg", "inv", "add", "mul"),
            weights=(25, 12, 8, 28, 27),
        )[0]
        if kind == "symbol":
            index = counter[0]
            counter[0] += 1
            return Symbol(index)
        if kind == "neg":
            return Neg(build(depth - 1))
        if kind == "inv":
            return Inv(build(depth - 1))
        left = build(depth - 1)
        right = build(depth - 1)
        return Add(left, right) if kind == "add" else Mul(left, right)

    return build(max_depth)


def random_instantiation(
    rng: random.Random,
    formula: Formula,
    min_order: int = -3,
    max_order: int = 3,
    zero_weight: float = 0.05,
) -> dict[int, OomValue]:
    """Random order-of-magnitude values for every symbol of a formula."""
    instantiation = {}
    for index in sorted(formula.symbols):
        if rng.random() < zero_weight:
            instantiation[index] = OomValue.zero()
        else:
            sign = rng.choice((Sign.PLUS, Sign.MINUS, Sign.ZERO))
            instantiation[index] = OomValue(sign, rng.randint(min_order, max_order))
    return instantiation
