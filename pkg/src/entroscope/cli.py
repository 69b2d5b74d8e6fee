"""Command-line interface: every capability as a subcommand.

Subcommands: profile, example, check, shannon-type, ae-cert, sw-sim.
stdout carries only the requested artifact (JSON, or CSV for sw-sim);
diagnostics go to stderr. Identical invocations (including seeds) produce
byte-identical output.

Exit codes: 0 success; 2 parse/usage error; 3 distribution invariant
violation; 4 not-prime / budget exceeded; 5 unknown inequality;
6 certificate gap not positive (deficit on stderr); 1 other failures.

ENTROSCOPE_BUDGET overrides the support-size caps. --tol adjusts numeric
tolerances only; structural zero checks are exact and never subject to it.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import binning, limits, quadruple, shannon
from .catalog import catalog, check_conditional
from .distributions import distribution_to_json
from .errors import (
    ArityMismatch,
    BudgetExceeded,
    ConstraintNotApplicable,
    DimensionMismatch,
    DuplicateOutcome,
    EntroscopeError,
    ExprSyntaxError,
    FormatError,
    GapNotPositive,
    InvalidProbability,
    NotPrime,
    OutcomeOutOfRange,
    OverlappingSubsets,
    SumNotOne,
    UnknownVariable,
    UnsupportedArity,
)
from .exprlang import _tokenize, parse, print_canonical
from .profile import polymatroid_check, profile_from_json, profile_of, profile_to_json

EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_DOMAIN = 4
EXIT_UNKNOWN_INEQ = 5
EXIT_NO_GAP = 6

_PARSE_ERRORS = (FormatError, ExprSyntaxError, UnknownVariable,
                 OverlappingSubsets, InvalidProbability, UnsupportedArity,
                 DimensionMismatch)
_INVARIANT_ERRORS = (SumNotOne, ArityMismatch, DuplicateOutcome,
                     OutcomeOutOfRange)
_DOMAIN_ERRORS = (NotPrime, BudgetExceeded)


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _emit_doc(args, doc, text_renderer) -> None:
    """JSON by default; ``--format text`` prints a terse human summary."""
    if getattr(args, "format", "json") == "text":
        sys.stdout.write(text_renderer(doc))
    else:
        _emit(doc)


def _profile_text(doc) -> str:
    lines = []
    for key, value in doc["profile"]["coords"].items():
        lines.append(f"H({','.join(key)}) = {value:.9f}")
    poly = doc["polymatroid"]
    lines.append(f"polymatroid: {'ok' if poly['ok'] else 'VIOLATED'} "
                 f"({poly['checked']} elemental checks)")
    for v in poly["violations"]:
        lines.append(f"  violated: {v['inequality']} = {v['value']:+.3g}")
    return "\n".join(lines) + "\n"


def _report_text(doc) -> str:
    lines = [f"quadruple over F_{doc['q']}: support {doc['support_size']} "
             f"(expected {doc['expected_support']}), uniform: {doc['uniform']}"]
    for name, qc in doc["quantities"].items():
        lines.append(f"  {name:10s} measured {qc['measured']:+.9f}  "
                     f"closed form {qc['closed_form']:+.9f}  match: {qc['match']}")
    zeros = ", ".join(f"{k}: {v}" for k, v in doc["structural_zeros"].items())
    lines.append(f"  structural zeros certified: {zeros}")
    lines.append(f"all checks pass: {doc['all_pass']}")
    return "\n".join(lines) + "\n"


def _check_text(doc) -> str:
    if "constraints" in doc:
        lines = [f"{doc['inequality']}: applicable: {doc['applicable']}"]
        for c in doc["constraints"]:
            lines.append(f"  constraint {c['expr']}: "
                         f"{'holds' if c['satisfied'] else 'FAILS'} "
                         f"({c['method']}, value {c['value']:+.6g})")
        if doc["applicable"]:
            lines.append(f"  body value {doc['body_value']:+.6g}; "
                         f"holds: {doc['holds']}")
        return "\n".join(lines) + "\n"
    if "values" in doc:
        worst = min(doc["values"], key=doc["values"].get)
        return (f"basic: {len(doc['values'])} elemental checks, "
                f"min {doc['min_value']:+.6g} at {worst}; "
                f"all non-negative: {doc['all_nonnegative']}\n")
    name = doc.get("inequality", doc["expr"])
    return f"{name}: value {doc['value']:+.9f} (non-negative: {doc['nonnegative']})\n"


def _shannon_text(doc) -> str:
    lines = [f"{doc['expression']}", f"decision: {doc['decision']}"]
    if "dual_weights" in doc:
        for text, w in sorted(doc["dual_weights"].items()):
            lines.append(f"  {w} * [{text}]")
    else:
        lines.append(f"  witness objective {doc['objective_value']}; "
                     f"witness coordinates: {len(doc['witness'])}")
    lines.append(f"certificate verified: {doc['verified']}")
    return "\n".join(lines) + "\n"


def _cert_text(doc) -> str:
    if "certificates" in doc:
        lines = [f"both inequalities excluded at q = {doc['q']} "
                 f"(half-width {doc['half_width']:.6g})"]
        for name, part in sorted(doc["certificates"].items()):
            lines.append(f"  {name}: gap {part['gap']:.6g}")
    else:
        lines = [f"{doc['target']} violated at q = {doc['q']}: "
                 f"gap {doc['gap']:.6g} (half-width {doc['half_width']:.6g}, "
                 f"mass {doc['perturbation_mass']:g})"]
    lines.append(f"zero-set: {', '.join(doc['zero_set'])}")
    lines.append(f"provenance: {' -> '.join(doc['provenance'])}")
    return "\n".join(lines) + "\n"


def _load_input(path):
    """Return ("distribution", d) or ("profile", p) by sniffing the schema."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON: {exc}") from exc
    if isinstance(doc, dict) and "outcomes" in doc:
        from .distributions import distribution_from_json

        return "distribution", distribution_from_json(doc)
    if isinstance(doc, dict) and "coords" in doc:
        return "profile", profile_from_json(doc)
    raise FormatError(f"{path}: neither a distribution nor a profile document")


def _variables_in(text):
    """Names appearing as variables (not atom heads) in expression text."""
    tokens = _tokenize(text)
    names = set()
    for i, (kind, value, _) in enumerate(tokens):
        if kind != "name":
            continue
        nxt = tokens[i + 1] if i + 1 < len(tokens) else ("eof", "", 0)
        if value in ("H", "I") and nxt[:2] == ("sym", "("):
            continue
        names.add(value)
    return tuple(sorted(names))


# ---------------------------------------------------------------------------
# subcommands


def _cmd_profile(args) -> int:
    kind, obj = _load_input(args.input)
    prof = obj if kind == "profile" else profile_of(obj)
    verdict = polymatroid_check(prof, args.tol)
    doc = {
        "profile": profile_to_json(prof),
        "polymatroid": {
            "ok": verdict.ok,
            "checked": verdict.checked,
            "violations": [{"inequality": t, "value": v}
                           for t, v in verdict.violations],
        },
    }
    _emit_doc(args, doc, _profile_text)
    return 0


def _cmd_example(args) -> int:
    dist = quadruple.quadruple_distribution(args.q)
    report = quadruple.verify_quadruple(args.q, tol=args.tol)
    dist_doc = distribution_to_json(dist)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(dist_doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
        _emit_doc(args, report.to_json(), _report_text)
    elif getattr(args, "format", "json") == "text":
        _emit_doc(args, report.to_json(), _report_text)
    else:
        _emit({"distribution": dist_doc, "verification": report.to_json()})
    return 0


def _check_conditional_on_profile(ineq, prof, tol):
    constraints = []
    applicable = True
    for c in ineq.constraints:
        value = c.evaluate(prof)
        ok = abs(value) <= tol
        applicable &= ok
        constraints.append({"expr": print_canonical(c), "satisfied": ok,
                            "method": "numeric", "value": value})
    doc = {
        "inequality": ineq.name,
        "applicable": applicable,
        "constraints": constraints,
        "warnings": ["profile input: constraints checked numerically only; "
                     "no structural certificates"],
        "body_value": None,
        "holds": None,
    }
    if applicable:
        doc["body_value"] = ineq.body.evaluate(prof)
        doc["holds"] = doc["body_value"] >= -tol
    return doc


def _cmd_check(args) -> int:
    kind, obj = _load_input(args.input)
    prof = obj if kind == "profile" else profile_of(obj)
    if args.expr is not None:
        expr = parse(args.expr, prof.order)
        value = expr.evaluate(prof)
        _emit_doc(args, {"expr": print_canonical(expr), "value": value,
                         "nonnegative": value >= -args.tol}, _check_text)
        return 0
    try:
        entry_kind, entry = catalog().get(args.ineq)
    except KeyError:
        sys.stderr.write(f"error: unknown inequality {args.ineq!r}; known: "
                         f"{', '.join(catalog().names())}\n")
        return EXIT_UNKNOWN_INEQ
    if entry_kind == "unconditional":
        value = entry.evaluate(prof)
        _emit_doc(args, {"inequality": args.ineq, "expr": print_canonical(entry),
                         "value": value, "nonnegative": value >= -args.tol},
                  _check_text)
        return 0
    if entry_kind == "basic":
        values = {e.atoms[0][1].text(prof.order): e.evaluate(prof) for e in entry}
        _emit_doc(args, {"inequality": "basic", "values": values,
                         "min_value": min(values.values()),
                         "all_nonnegative": all(v >= -args.tol
                                                for v in values.values())},
                  _check_text)
        return 0
    if kind == "profile":
        _emit_doc(args, _check_conditional_on_profile(entry, prof, args.tol),
                  _check_text)
        return 0
    verdict = check_conditional(entry, obj, tol=args.tol)
    _emit_doc(args, verdict.to_json(), _check_text)
    return 0


def _cmd_shannon_type(args) -> int:
    order = tuple(args.vars.split(",")) if args.vars else _variables_in(args.expr)
    if not order:
        raise ExprSyntaxError(args.expr, 0, "an expression with variables")
    expr = parse(args.expr, order)
    verdict = shannon.is_shannon_type(expr)
    if not shannon.verify_verdict(verdict):
        raise AssertionError("certificate failed independent re-verification")
    doc = verdict.to_json()
    doc["verified"] = True
    _emit_doc(args, doc, _shannon_text)
    return 0


def _cmd_ae_cert(args) -> int:
    if args.q is not None:
        cert = limits.certificate_at(args.target, args.q)
    else:
        _, cert = limits.minimal_certifying_prime(args.target)
    _emit_doc(args, cert.to_json(), _cert_text)
    return 0


def _cmd_sw_sim(args) -> int:
    kind, dist = _load_input(args.dist)
    if kind != "distribution":
        raise FormatError("sw-sim needs a distribution file, not a profile")
    try:
        n_list = [int(part) for part in args.N.split(",")]
    except ValueError as exc:
        raise FormatError(f"--N must be comma-separated integers: {exc}") from exc
    if any(n < 1 for n in n_list):
        raise FormatError("--N entries must be >= 1")
    rows = []
    for seed in range(args.seed0, args.seed0 + args.seeds):
        rows.extend(binning.sw_report(dist, n_list, args.delta, seed,
                                      args.x, args.y))
    sys.stdout.write(binning.rows_to_csv(rows))
    return 0


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="entroscope",
        description="Exact laboratory for linear and conditional "
                    "information inequalities.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="entropy profile plus polymatroid verdict")
    p.add_argument("input", help="distribution or profile JSON file")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(fn=_cmd_profile)

    p = sub.add_parser("example", help="build and verify the quadruple at a prime q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out", help="write the distribution JSON here; report to stdout")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(fn=_cmd_example)

    p = sub.add_parser("check", help="evaluate an inequality or expression on a file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--ineq", help="catalog name, e.g. zy98, cond1, matus-star(3)")
    g.add_argument("--expr", help="expression text, e.g. 'I(a;b) - I(a;b|c)'")
    p.add_argument("input", help="distribution or profile JSON file")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("shannon-type", help="decide Shannon-typeness with certificate")
    p.add_argument("--expr", required=True)
    p.add_argument("--vars", help="comma-separated variable order "
                                  "(default: names in the expression, sorted)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(fn=_cmd_shannon_type)

    p = sub.add_parser("ae-cert", help="violation certificate for a limit point")
    p.add_argument("--target", required=True, choices=limits.TARGETS)
    p.add_argument("--q", type=int, help="certify at this prime instead of scanning")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(fn=_cmd_ae_cert)

    p = sub.add_parser("sw-sim", help="exact random-binning report (CSV)")
    p.add_argument("--dist", required=True, help="distribution JSON for the pair")
    p.add_argument("--N", required=True, help="comma-separated copy counts, e.g. 2,4,6,8")
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--seeds", type=int, default=1)
    p.add_argument("--seed0", type=int, default=0)
    p.add_argument("--x", help="name of the hashed variable (default: first)")
    p.add_argument("--y", help="name of the side-information variable")
    p.set_defaults(fn=_cmd_sw_sim)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except GapNotPositive as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NO_GAP
    except _DOMAIN_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except _PARSE_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except _INVARIANT_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVARIANT
    except ConstraintNotApplicable as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (EntroscopeError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
