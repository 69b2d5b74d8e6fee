"""Deciding Shannon-typeness by exact rational LP over the polymatroid cone.

An expression E (rational coefficients over subset coordinates) is
Shannon-type iff min { E(h) : h satisfies every elemental inequality } = 0.
Because the feasible set is a cone containing 0, the minimum is either
exactly 0 or unbounded below, and Farkas' lemma makes both answers
certifiable:

* zero: non-negative rational weights on the elemental expressions whose
  weighted sum *equals* E coordinate-by-coordinate;
* unbounded below: a rational ray h* that satisfies every elemental
  inequality (a polymatroid) with E(h*) < 0.

The decision runs a phase-1 simplex on the dual feasibility system
``sum_j w_j g_j = E, w >= 0`` with Bland's anti-cycling rule, entirely in
Fractions - no floats anywhere. Certificates are re-verified by exact
arithmetic before they are returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import UnsupportedArity
from .profile import (
    InfoExpression,
    elemental_expressions,
    subset_key,
)
from .rational import rational_str

_DEFAULT_NAMES = ("a", "b", "c", "d", "e", "f")

MAX_VARIABLES = 6  # 63 coordinates, 246 elemental rows; desk scale


def elemental_inequalities(n: int, order: Sequence[str] | None = None):
    """Elemental inequalities for ``n`` variables (default names a..f)."""
    if not 1 <= n <= MAX_VARIABLES:
        raise UnsupportedArity(f"supported variable counts are 1..{MAX_VARIABLES}, got {n}")
    if order is None:
        order = _DEFAULT_NAMES[:n]
    elif len(order) != n:
        raise UnsupportedArity(f"order {order} does not have {n} names")
    return elemental_expressions(order)


# ---------------------------------------------------------------------------
# exact phase-1 simplex


def _phase_one(columns, rhs):
    """Solve min sum(s) s.t. sum_j col_j * w_j + s = rhs, w, s >= 0 (rhs >= 0).

    ``columns`` is a list of k rational vectors of length m. Returns either
    ("feasible", w) with the k-vector of weights, or ("infeasible", y) with
    the dual vector y of the phase-1 optimum (y . rhs > 0, y . col_j <= 0).
    Bland's rule on the structural columns; artificials never re-enter.
    """
    m = len(rhs)
    k = len(columns)
    zero, one = Fraction(0), Fraction(1)
    # tableau rows: [structural columns | artificial identity | rhs]
    tab = []
    for i in range(m):
        row = [col[i] for col in columns]
        row.extend(one if j == i else zero for j in range(m))
        row.append(rhs[i])
        tab.append(row)
    basis = [k + i for i in range(m)]

    def reduced_cost(j):
        # phase-1 costs: 0 on structural, 1 on artificial columns
        r = zero if j < k else one
        for i in range(m):
            if basis[i] >= k and tab[i][j]:
                r -= tab[i][j]
        return r

    while True:
        entering = -1
        for j in range(k):  # Bland: smallest structural index first
            if basis.count(j):
                continue
            if reduced_cost(j) < 0:
                entering = j
                break
        if entering < 0:
            break
        leaving = -1
        best = None
        for i in range(m):
            coef = tab[i][entering]
            if coef > 0:
                ratio = tab[i][-1] / coef
                if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving < 0:
            raise AssertionError("phase-1 objective is bounded; no leaving row found")
        # pivot
        pivot = tab[leaving][entering]
        prow = [v / pivot for v in tab[leaving]]
        tab[leaving] = prow
        for i in range(m):
            if i != leaving and tab[i][entering]:
                f = tab[i][entering]
                tab[i] = [v - f * pv for v, pv in zip(tab[i], prow)]
        basis[leaving] = entering

    objective = sum((tab[i][-1] for i in range(m) if basis[i] >= k), zero)
    if objective == 0:
        w = [zero] * k
        for i in range(m):
            if basis[i] < k:
                w[basis[i]] = tab[i][-1]
        return "feasible", w
    # dual vector: y_i = sum over rows with artificial basis of B^-1 column i
    y = []
    for i in range(m):
        col = k + i
        y.append(sum((tab[r][col] for r in range(m) if basis[r] >= k), zero))
    return "infeasible", y


# ---------------------------------------------------------------------------
# cone LP and verdicts


@dataclass(frozen=True)
class LPOutcome:
    """Result of minimizing an expression over a finitely generated cone."""

    status: str  # "zero" or "unbounded-below"
    dual_weights: tuple | None  # (index, Fraction) pairs, weights > 0
    ray: Mapping[int, Fraction] | None  # mask -> value, a point of the cone
    ray_objective: Fraction | None  # objective at the ray, < 0


def _coeff_vector(e: InfoExpression, size: int):
    terms = e.rational_terms()
    return [terms.get(mask, Fraction(0)) for mask in range(1, size + 1)]


def lp_min(objective: InfoExpression, cone: Sequence[InfoExpression]) -> LPOutcome:
    """Minimize ``objective`` over ``{h : g(h) >= 0 for g in cone}``.

    The feasible set is a cone containing 0, so the result is exactly 0
    (with Farkas dual weights proving objective = sum w_j g_j) or unbounded
    below (with an explicit rational ray). Both certificates are re-checked
    exactly before returning.
    """
    order = objective.order
    size = 2 ** len(order) - 1
    for g in cone:
        if g.order != order:
            raise UnsupportedArity(
                f"cone expression over {g.order} does not match objective over {order}")
    c = _coeff_vector(objective, size)
    cols = [_coeff_vector(g, size) for g in cone]
    # normalize rhs signs for phase 1
    signs = [Fraction(-1) if ci < 0 else Fraction(1) for ci in c]
    rhs = [s * ci for s, ci in zip(signs, c)]
    flipped = [[s * col[i] for i, s in enumerate(signs)] for col in cols]
    status, payload = _phase_one(flipped, rhs)

    if status == "feasible":
        weights = tuple((j, w) for j, w in enumerate(payload) if w)
        # exact identity check: sum_j w_j g_j == objective
        acc = [Fraction(0)] * size
        for j, w in weights:
            for i, v in enumerate(cols[j]):
                acc[i] += w * v
        if acc != c:
            raise AssertionError("dual certificate failed exact re-verification")
        if any(w < 0 for _, w in weights):
            raise AssertionError("negative dual weight")
        return LPOutcome("zero", weights, None, None)

    y = payload
    ray = [-s * yi for s, yi in zip(signs, y)]
    # clear denominators and common factors for a tidy integer ray
    den = 1
    for v in ray:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in ray]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    ray = [Fraction(v) for v in ints]
    # exact re-verification: ray inside the cone, objective strictly negative
    for col in cols:
        if sum(ci * ri for ci, ri in zip(col, ray)) < 0:
            raise AssertionError("witness ray failed exact cone membership")
    value = sum(ci * ri for ci, ri in zip(c, ray))
    if value >= 0:
        raise AssertionError("witness ray does not achieve a negative objective")
    ray_map = {mask: ray[mask - 1] for mask in range(1, size + 1) if ray[mask - 1]}
    return LPOutcome("unbounded-below", None, ray_map, value)


@dataclass(frozen=True)
class ShannonTypeVerdict:
    """Decision plus a machine-checkable certificate.

    ``dual_weights`` maps the canonical text of an elemental inequality to a
    positive Fraction; their weighted sum equals the expression exactly.
    ``witness`` maps subset keys to the coordinates of a rational polymatroid
    on which the expression is exactly ``witness_value`` < 0.
    """

    decision: str  # "shannon-type" or "not-shannon-type"
    expression: InfoExpression
    dual_weights: Mapping[str, Fraction] | None = None
    witness: Mapping[str, Fraction] | None = None
    witness_value: Fraction | None = None

    @property
    def is_shannon_type(self) -> bool:
        return self.decision == "shannon-type"

    def to_json(self):
        from .exprlang import print_canonical

        doc = {"decision": self.decision,
               "expression": print_canonical(self.expression)}
        if self.dual_weights is not None:
            doc["dual_weights"] = {k: rational_str(v)
                                   for k, v in self.dual_weights.items()}
        if self.witness is not None:
            doc["witness"] = {k: rational_str(v) for k, v in self.witness.items()}
            doc["objective_value"] = rational_str(self.witness_value)
        return doc


def is_shannon_type(e: InfoExpression) -> ShannonTypeVerdict:
    """Decide whether ``e >= 0`` is a non-negative combination of elemental
    inequalities; raises :class:`IrrationalCoefficients` on float
    coefficients and :class:`UnsupportedArity` beyond 6 variables."""
    n = len(e.order)
    if not 1 <= n <= MAX_VARIABLES:
        raise UnsupportedArity(f"supported variable counts are 1..{MAX_VARIABLES}, got {n}")
    e.rational_terms()  # raises on floats before any LP work
    cone = elemental_expressions(e.order)
    outcome = lp_min(e, cone)
    if outcome.status == "zero":
        weights = {cone[j].atoms[0][1].text(e.order): w
                   for j, w in outcome.dual_weights}
        return ShannonTypeVerdict("shannon-type", e, dual_weights=weights)
    witness = {subset_key(e.order, mask): v for mask, v in outcome.ray.items()}
    return ShannonTypeVerdict("not-shannon-type", e, witness=witness,
                              witness_value=outcome.ray_objective)


# ---------------------------------------------------------------------------
# independent certificate verification (used by the CLI and tests)


def verify_verdict(verdict: ShannonTypeVerdict) -> bool:
    """Re-check a verdict's certificate from scratch, exactly.

    Shannon-type: re-expand the named elemental inequalities and check the
    weighted-sum identity. Not-shannon-type: rebuild the witness vector and
    check every elemental inequality plus the negative objective.
    """
    from .exprlang import parse

    e = verdict.expression
    order = e.order
    size = 2 ** len(order) - 1
    target = _coeff_vector(e, size)
    if verdict.decision == "shannon-type":
        acc = [Fraction(0)] * size
        for text, weight in verdict.dual_weights.items():
            if weight < 0:
                return False
            g = _coeff_vector(parse(text, order), size)
            for i, v in enumerate(g):
                acc[i] += weight * v
        return acc == target
    key_to_mask = {subset_key(order, m): m for m in range(1, size + 1)}
    h = [Fraction(0)] * size
    for key, value in verdict.witness.items():
        h[key_to_mask[key] - 1] = value
    for g in elemental_expressions(order):
        gv = _coeff_vector(g, size)
        if sum(a * b for a, b in zip(gv, h)) < 0:
            return False
    value = sum(a * b for a, b in zip(target, h))
    return value == verdict.witness_value and value < 0
