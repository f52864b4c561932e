"""Command-line front end.

Subcommands:

* ``eval EXPR --env FILE``: evaluate a formula over order-of-magnitude
  values (exit 2 when the result is undefined).
* ``compare EXPR1 EXPR2 --env FILE``: four-valued comparison of two
  evaluations (GT, LT, EQ, INCOMPARABLE).
* ``expect PROBLEM``: per-option expected utility plus the pairwise
  preference table.
* ``pearl PROBLEM``: the integer-graded analysis (level numbers, original
  and amended expected values) side by side with the order-of-magnitude
  expectation and the consistency verdict.
* ``verify "EXPR1 > EXPR2" --env FILE`` or ``verify PROBLEM``: the
  soundness/completeness harness; exit 3 when a witness search exhausts
  its budget (or a soundness sample fails).

``--machine`` switches any subcommand to a single structured JSON document
with a versioned ``schema`` field; identical inputs and seeds produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Mapping

from oomcalc.decision import (
    DecisionProblem,
    OomUtility,
    Option,
    PearlMu,
    compare_options,
    pearl_cross_check,
    pearl_expected,
    verify_theorem3,
)
from oomcalc.errors import (
    MissingSymbol,
    ParseError,
    SchemaError,
    UndefinedOperand,
    UnknownOutcome,
)
from oomcalc.formulas import (
    UNDEFINED,
    assignment_from_names,
    check_gt_claim,
    evaluate,
    parse_formula,
)
from oomcalc.infinity import INF
from oomcalc.kappa import KappaFunction, OomProbability, OutcomeSpace
from oomcalc.oom import OomValue, StarSamplerConfig, compare, parse_oom

SCHEMA = "oomcalc.report/1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNDEFINED = 2
EXIT_CHECK_FAILED = 3


# ---------------------------------------------------------------------------
# input loading
# ---------------------------------------------------------------------------


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read JSON: {exc}", path) from None


def load_env(path: str) -> dict[str, OomValue]:
    """Environment file: a JSON object mapping names to value literals."""
    raw = _load_json(path)
    if not isinstance(raw, dict):
        raise SchemaError("environment must be a JSON object", path)
    env = {}
    for name, literal in raw.items():
        try:
            env[name] = parse_oom(str(literal))
        except ValueError as exc:
            raise SchemaError(str(exc), f"{path}:{name}") from None
    return env


def _parse_rank(raw, path: str):
    if isinstance(raw, str) and raw.strip().lower() == "inf":
        return INF
    if isinstance(raw, int) and not isinstance(raw, bool) and raw >= 0:
        return raw
    raise SchemaError(f"rank must be a non-negative integer or \"inf\", got {raw!r}", path)


def _parse_value_block(raw, path: str) -> dict[str, OomValue]:
    if not isinstance(raw, dict):
        raise SchemaError("block must be a JSON object", path)
    values = {}
    for label, literal in raw.items():
        try:
            values[label] = parse_oom(str(literal))
        except ValueError as exc:
            raise SchemaError(str(exc), f"{path}.{label}") from None
    return values


def load_problem(path: str) -> DecisionProblem:
    """Problem document: outcome labels plus options, each carrying one
    probability block (``kappa`` or ``oom_prob``) and one utility block
    (``utility`` or ``mu``)."""
    raw = _load_json(path)
    if not isinstance(raw, dict):
        raise SchemaError("problem must be a JSON object", path)
    outcomes = raw.get("outcomes")
    if not isinstance(outcomes, list) or not all(isinstance(w, str) for w in outcomes):
        raise SchemaError("must be a list of outcome labels", f"{path}:outcomes")
    try:
        space = OutcomeSpace(outcomes)
    except ValueError as exc:
        raise SchemaError(str(exc), f"{path}:outcomes") from None
    raw_options = raw.get("options")
    if not isinstance(raw_options, list) or not raw_options:
        raise SchemaError("must be a non-empty list", f"{path}:options")

    options = []
    for i, raw_option in enumerate(raw_options):
        opt_path = f"{path}:options[{i}]"
        if not isinstance(raw_option, dict):
            raise SchemaError("option must be a JSON object", opt_path)
        name = raw_option.get("name", f"option{i + 1}")
        prob_blocks = [key for key in ("kappa", "oom_prob") if key in raw_option]
        util_blocks = [key for key in ("utility", "mu") if key in raw_option]
        if len(prob_blocks) != 1:
            raise SchemaError(
                "exactly one probability block (kappa or oom_prob) required", opt_path
            )
        if len(util_blocks) != 1:
            raise SchemaError("exactly one utility block (utility or mu) required", opt_path)

        kappa = None
        if prob_blocks[0] == "kappa":
            block = raw_option["kappa"]
            if not isinstance(block, dict):
                raise SchemaError("block must be a JSON object", f"{opt_path}.kappa")
            ranks = {
                label: _parse_rank(value, f"{opt_path}.kappa.{label}")
                for label, value in block.items()
            }
            try:
                kappa = KappaFunction(space, ranks)
            except (ValueError, UnknownOutcome) as exc:
                raise SchemaError(str(exc), f"{opt_path}.kappa") from None
            probability = kappa.to_oom_probability()
        else:
            values = _parse_value_block(raw_option["oom_prob"], f"{opt_path}.oom_prob")
            try:
                probability = OomProbability(space, values)
            except (ValueError, UnknownOutcome) as exc:
                raise SchemaError(str(exc), f"{opt_path}.oom_prob") from None

        mu = None
        if util_blocks[0] == "mu":
            block = raw_option["mu"]
            if not isinstance(block, dict):
                raise SchemaError("block must be a JSON object", f"{opt_path}.mu")
            for label, value in block.items():
                if not isinstance(value, int) or isinstance(value, bool):
                    raise SchemaError("mu values must be integers", f"{opt_path}.mu.{label}")
            try:
                mu = PearlMu(space, block)
            except (ValueError, UnknownOutcome) as exc:
                raise SchemaError(str(exc), f"{opt_path}.mu") from None
            utility = mu.to_utility()
        else:
            values = _parse_value_block(raw_option["utility"], f"{opt_path}.utility")
            try:
                utility = OomUtility(space, values)
            except (ValueError, UnknownOutcome) as exc:
                raise SchemaError(str(exc), f"{opt_path}.utility") from None

        options.append(
            Option(name=name, probability=probability, utility=utility, kappa=kappa, mu=mu)
        )
    return DecisionProblem(space=space, options=tuple(options))


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _emit(machine: bool, document: dict, lines: list[str]) -> None:
    if machine:
        print(json.dumps(document, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _pearl_value_str(value) -> str:
    return str(value)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_eval(args) -> int:
    env = load_env(args.env) if args.env else {}
    formula, names = parse_formula(args.expression)
    assignment = assignment_from_names(names, env)
    value = evaluate(formula, assignment)
    result = "undefined" if value is UNDEFINED else str(value)
    _emit(
        args.machine,
        {"schema": SCHEMA, "command": "eval", "expression": args.expression, "result": result},
        [result],
    )
    return EXIT_UNDEFINED if value is UNDEFINED else EXIT_OK


def _cmd_compare(args) -> int:
    env = load_env(args.env) if args.env else {}
    lhs, lhs_names = parse_formula(args.lhs)
    rhs, rhs_names = parse_formula(args.rhs)
    lhs_value = evaluate(lhs, assignment_from_names(lhs_names, env))
    rhs_value = evaluate(rhs, assignment_from_names(rhs_names, env))
    undefined = lhs_value is UNDEFINED or rhs_value is UNDEFINED
    relation = "undefined" if undefined else str(compare(lhs_value, rhs_value))
    _emit(
        args.machine,
        {
            "schema": SCHEMA,
            "command": "compare",
            "lhs": args.lhs,
            "rhs": args.rhs,
            "lhs_value": "undefined" if lhs_value is UNDEFINED else str(lhs_value),
            "rhs_value": "undefined" if rhs_value is UNDEFINED else str(rhs_value),
            "relation": relation,
        },
        [relation],
    )
    return EXIT_UNDEFINED if undefined else EXIT_OK


def _cmd_expect(args) -> int:
    problem = load_problem(args.problem)
    expectations = [(option.name, option.expectation) for option in problem.options]
    lines = [f"{name}: {value}" for name, value in expectations]
    preferences = []
    for i in range(len(problem.options)):
        for j in range(i + 1, len(problem.options)):
            first, second = problem.options[i], problem.options[j]
            verdict = str(compare_options(first.expectation, second.expectation))
            preferences.append(
                {"first": first.name, "second": second.name, "verdict": verdict}
            )
            lines.append(f"{first.name} vs {second.name}: {verdict}")
    _emit(
        args.machine,
        {
            "schema": SCHEMA,
            "command": "expect",
            "options": [{"name": name, "expectation": str(value)} for name, value in expectations],
            "preferences": preferences,
        },
        lines,
    )
    return EXIT_OK


def _cmd_pearl(args) -> int:
    problem = load_problem(args.problem)
    rows = []
    lines = []
    for i, option in enumerate(problem.options):
        if option.kappa is None or option.mu is None:
            raise SchemaError(
                "pearl analysis needs kappa and mu blocks", f"{args.problem}:options[{i}]"
            )
        check = pearl_cross_check(option.kappa, option.mu)
        levels = (check.n_plus, check.n_minus)
        original = pearl_expected(levels, "original")
        amended = pearl_expected(levels, "amended")
        rows.append(
            {
                "name": option.name,
                "n_plus": check.n_plus,
                "n_minus": check.n_minus,
                "original": _pearl_value_str(original),
                "amended": _pearl_value_str(amended),
                "expectation": str(check.actual),
                "consistent": check.consistent,
            }
        )
        lines.append(
            f"{option.name}: n+={check.n_plus} n-={check.n_minus} "
            f"original={original} amended={amended} "
            f"oom={check.actual} consistent={'yes' if check.consistent else 'NO'}"
        )
    _emit(args.machine, {"schema": SCHEMA, "command": "pearl", "options": rows}, lines)
    return EXIT_OK


def _verify_claim(args) -> int:
    lhs_text, _, rhs_text = args.target.partition(">")
    if ">" in rhs_text:
        raise ParseError("a claim contains exactly one '>'", args.target.index(">") + 1)
    env = load_env(args.env) if args.env else {}
    lhs, lhs_names = parse_formula(lhs_text.strip())
    rhs, rhs_names = parse_formula(rhs_text.strip())
    config = StarSamplerConfig(seed=args.seed)
    report = check_gt_claim(
        lhs,
        assignment_from_names(lhs_names, env),
        rhs,
        assignment_from_names(rhs_names, env),
        config=config,
        samples=args.samples,
        budget=args.budget,
    )
    lines = [
        f"claim: {args.target.strip()}",
        f"lhs value: {report.oom_lhs}",
        f"rhs value: {report.oom_rhs}",
        f"relation: {report.relation}",
    ]
    if report.relation.value == "GT":
        lines.append(f"soundness: {report.samples - report.failures}/{report.samples} samples hold")
    else:
        lines.append("relation does not hold; searched for a refuting interpretation pair")
        if report.witness is not None:
            witness = report.witness
            for index, value in sorted(witness.lhs_assignment.items()):
                lines.append(f"  lhs {lhs_names.get(index, f'x{index}')} = {value}")
            for index, value in sorted(witness.rhs_assignment.items()):
                lines.append(f"  rhs {rhs_names.get(index, f'x{index}')} = {value}")
            lines.append(
                f"  values: {witness.lhs_value} vs {witness.rhs_value} ({witness.relation})"
            )
        else:
            lines.append("  witness search exhausted its budget")
    lines.append("PASS" if report.passed else "FAIL")
    document = {
        "schema": SCHEMA,
        "command": "verify",
        "mode": "claim",
        "seed": args.seed,
        "report": report.to_dict(),
    }
    _emit(args.machine, document, lines)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _verify_problem(args) -> int:
    problem = load_problem(args.target)
    if len(problem.options) != 2:
        raise SchemaError("verification needs exactly two options", f"{args.target}:options")
    config = StarSamplerConfig(seed=args.seed)
    report = verify_theorem3(
        problem.options[0],
        problem.options[1],
        config=config,
        samples=args.samples,
        budget=args.budget,
    )
    lines = [
        f"{problem.options[0].name}: {report.expectation1}",
        f"{problem.options[1].name}: {report.expectation2}",
        f"preference: {report.preference}",
    ]
    for check in report.checks:
        if check.holds:
            lines.append(
                f"{check.claim}: holds; "
                f"{check.samples - check.failures}/{check.samples} samples confirm"
            )
        elif check.witness is not None:
            lines.append(
                f"{check.claim}: does not hold; witness expectations "
                f"{check.witness.expectation1} vs {check.witness.expectation2}"
            )
        else:
            lines.append(f"{check.claim}: does not hold; witness search exhausted")
    lines.append("PASS" if report.passed else "FAIL")
    document = {
        "schema": SCHEMA,
        "command": "verify",
        "mode": "problem",
        "seed": args.seed,
        "report": report.to_dict(),
    }
    _emit(args.machine, document, lines)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _cmd_verify(args) -> int:
    if ">" in args.target:
        return _verify_claim(args)
    return _verify_problem(args)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oomcalc",
        description="Exact order-of-magnitude calculus: evaluation, decision "
        "analysis, and sampling-based verification.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    p_eval = subparsers.add_parser("eval", help="evaluate a formula over an environment")
    p_eval.add_argument("expression")
    p_eval.add_argument("--env", help="JSON file mapping names to value literals")
    p_eval.add_argument("--machine", action="store_true", help="emit a JSON report")
    p_eval.set_defaults(handler=_cmd_eval)

    p_compare = subparsers.add_parser("compare", help="compare two formula evaluations")
    p_compare.add_argument("lhs")
    p_compare.add_argument("rhs")
    p_compare.add_argument("--env", help="JSON file mapping names to value literals")
    p_compare.add_argument("--machine", action="store_true")
    p_compare.set_defaults(handler=_cmd_compare)

    p_expect = subparsers.add_parser("expect", help="expected utilities and preferences")
    p_expect.add_argument("problem", help="problem document (JSON)")
    p_expect.add_argument("--machine", action="store_true")
    p_expect.set_defaults(handler=_cmd_expect)

    p_pearl = subparsers.add_parser("pearl", help="integer-graded utility analysis")
    p_pearl.add_argument("problem", help="problem document with kappa and mu blocks")
    p_pearl.add_argument("--machine", action="store_true")
    p_pearl.set_defaults(handler=_cmd_pearl)

    p_verify = subparsers.add_parser(
        "verify", help="sampling harness for a claim or a two-option problem"
    )
    p_verify.add_argument("target", help="either \"EXPR1 > EXPR2\" or a problem file")
    p_verify.add_argument("--env", help="JSON environment for claim mode")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--samples", type=int, default=100)
    p_verify.add_argument("--budget", type=int, default=10_000)
    p_verify.add_argument("--machine", action="store_true")
    p_verify.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ParseError, SchemaError, UnknownOutcome, UndefinedOperand) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MissingSymbol as exc:
        print(f"error: the environment does not define {exc.args[0]!r}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
