"""Built-in catalog of linear and conditional information inequalities.

All entries live on four variables in the canonical order (a, b, c, d) and
are stored in "slack" form: an unconditional entry is an expression that is
claimed >= 0, a conditional entry is a list of constraint expressions
(each required = 0) plus such a body.

Frozen names: "zy98", "cond1".."cond4", "matus-star(k)", "ingleton",
"basic". ``matus_star(1)`` coincides with "zy98" coordinate-by-coordinate.

Constraint checking is exact wherever the constraint is an independence or
functional-dependence pattern; the numeric fallback never silently stands in
for an exact zero (it is reported as a warning, and an unrecognizable
constraint that exceeds tolerance raises).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .distributions import (
    JointDistribution,
    is_conditionally_independent,
    is_functionally_determined,
)
from .errors import ConstraintNotApplicable, DimensionMismatch
from .exprlang import print_canonical
from .profile import (
    InfoExpression,
    detect_atom,
    elemental_expressions,
    expand_entropy,
    expand_mutual_info,
    ingleton_expression,
    names_of,
    profile_of,
)

CANONICAL_ORDER = ("a", "b", "c", "d")


def _I(s, t, given=()):
    return expand_mutual_info(CANONICAL_ORDER, s, t, given)


def _H(s, given=()):
    return expand_entropy(CANONICAL_ORDER, s, given)


@dataclass(frozen=True)
class ConditionalInequality:
    """Constraints (each = 0) and a body (>= 0 under the constraints)."""

    name: str
    order: tuple
    constraints: tuple  # InfoExpression, each required to vanish
    body: InfoExpression  # slack form: >= 0 means the inequality holds

    def constraint_texts(self):
        return tuple(print_canonical(c) for c in self.constraints)


def zy98_expression() -> InfoExpression:
    """2 I(c;d|a) + I(c;d|b) + I(a;b) + I(a;c|d) + I(a;d|c) - I(c;d)."""
    return (2 * _I("c", "d", "a") + _I("c", "d", "b") + _I("a", "b")
            + _I("a", "c", "d") + _I("a", "d", "c") - _I("c", "d"))


def matus_star_expression(k: int) -> InfoExpression:
    """Slack of the k-indexed family

        I(c;d) <= I(c;d|a) + I(c;d|b) + I(a;b)
                  + (1/k) I(c;d|a) + ((k+1)/2) (I(a;c|d) + I(a;d|c))

    Valid for every entropic (hence every a.e.) point and every integer
    k >= 1; k = 1 gives exactly the zy98 expression.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    half = Fraction(k + 1, 2)
    return (_I("c", "d", "a") + _I("c", "d", "b") + _I("a", "b")
            + Fraction(1, k) * _I("c", "d", "a")
            + half * _I("a", "c", "d") + half * _I("a", "d", "c")
            - _I("c", "d"))


def _conditional_entries() -> dict:
    body_long = (_I("c", "d", "a") + _I("c", "d", "b") + _I("a", "b")
                 - _I("c", "d"))
    return {
        "cond1": ConditionalInequality(
            "cond1", CANONICAL_ORDER,
            (_I("a", "b", "c"), _I("a", "b")),
            _I("c", "d", "a") + _I("c", "d", "b") - _I("c", "d")),
        "cond2": ConditionalInequality(
            "cond2", CANONICAL_ORDER,
            (_I("a", "b", "c"), _I("b", "d", "c")),
            body_long),
        "cond3": ConditionalInequality(
            "cond3", CANONICAL_ORDER,
            (_I("a", "b", "c"), _H("c", ("a", "b"))),
            body_long),
        "cond4": ConditionalInequality(
            "cond4", CANONICAL_ORDER,
            (_I("a", "c", "d"), _I("a", "d", "c")),
            body_long),
    }


_MATUS_RE = re.compile(r"^matus-star\((\d+)\)$")


class Catalog:
    """Immutable view of the built-in inequalities."""

    def __init__(self):
        self._unconditional = {
            "zy98": zy98_expression(),
            "ingleton": ingleton_expression(CANONICAL_ORDER),
        }
        self._conditional = _conditional_entries()
        self._basic = tuple(elemental_expressions(CANONICAL_ORDER))

    @property
    def unconditional(self) -> Mapping[str, InfoExpression]:
        return dict(self._unconditional)

    @property
    def conditional(self) -> Mapping[str, ConditionalInequality]:
        return dict(self._conditional)

    @property
    def basic(self) -> tuple:
        return self._basic

    def matus_star(self, k: int) -> InfoExpression:
        return matus_star_expression(k)

    @property
    def family_names(self) -> tuple:
        return ("zy98", "cond1", "cond2", "cond3", "cond4", "matus-star(k)")

    def names(self) -> tuple:
        return (*self._unconditional, *self._conditional, "matus-star(k)", "basic")

    def get(self, name: str):
        """Resolve a frozen name to ("unconditional", expr),
        ("conditional", ineq) or ("basic", tuple-of-expr)."""
        if name in self._unconditional:
            return "unconditional", self._unconditional[name]
        if name in self._conditional:
            return "conditional", self._conditional[name]
        m = _MATUS_RE.match(name)
        if m:
            return "unconditional", self.matus_star(int(m.group(1)))
        if name == "basic":
            return "basic", self._basic
        raise KeyError(name)


_CATALOG = None


def catalog() -> Catalog:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = Catalog()
    return _CATALOG


# ---------------------------------------------------------------------------
# constraint certification


@dataclass(frozen=True)
class ConstraintCheck:
    text: str
    satisfied: bool
    method: str  # "structural" or "numeric"
    value: float


@dataclass(frozen=True)
class ConditionalVerdict:
    name: str
    applicable: bool
    constraints: tuple  # ConstraintCheck
    body_value: float | None
    holds: bool | None
    warnings: tuple

    def to_json(self):
        return {
            "inequality": self.name,
            "applicable": self.applicable,
            "constraints": [
                {"expr": c.text, "satisfied": c.satisfied,
                 "method": c.method, "value": c.value}
                for c in self.constraints
            ],
            "body_value": self.body_value,
            "holds": self.holds,
            "warnings": list(self.warnings),
        }


def check_conditional(ineq: ConditionalInequality, d: JointDistribution,
                      tol: float = 1e-9) -> ConditionalVerdict:
    """Certify the constraints on ``d`` and, if they hold, evaluate the body.

    Independence/determinism constraints are decided exactly on the
    rationals. A constraint of any other shape falls back to the numeric
    tolerance with a warning if it is within ``tol``, and raises
    :class:`ConstraintNotApplicable` otherwise.
    """
    if d.names != ineq.order:
        raise DimensionMismatch(
            f"distribution variables {d.names} do not match inequality "
            f"variables {ineq.order}")
    prof = profile_of(d)
    checks = []
    warnings = []
    applicable = True
    for c in ineq.constraints:
        text = print_canonical(c)
        value = c.evaluate(prof)
        atom = detect_atom(c)
        if atom is not None:
            if atom.kind == "I":
                ok = is_conditionally_independent(
                    d,
                    names_of(ineq.order, atom.s),
                    names_of(ineq.order, atom.t),
                    names_of(ineq.order, atom.u))
            else:
                ok = is_functionally_determined(
                    d, names_of(ineq.order, atom.s), names_of(ineq.order, atom.t))
            checks.append(ConstraintCheck(text, ok, "structural", value))
            applicable &= ok
        else:
            if abs(value) <= tol:
                warnings.append(
                    f"constraint {text} accepted numerically (|{value:.3g}| <= {tol}); "
                    "no structural certificate")
                checks.append(ConstraintCheck(text, True, "numeric", value))
            else:
                raise ConstraintNotApplicable(
                    f"constraint {text} is not an independence/determinism "
                    f"pattern and evaluates to {value}")
    if not applicable:
        return ConditionalVerdict(ineq.name, False, tuple(checks), None, None,
                                  tuple(warnings))
    body_value = ineq.body.evaluate(prof)
    return ConditionalVerdict(ineq.name, True, tuple(checks), body_value,
                              body_value >= -tol, tuple(warnings))
