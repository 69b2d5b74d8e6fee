"""Finite joint distributions with exact rational probabilities.

A :class:`JointDistribution` is an ordered list of named variables with
finite alphabets plus a pmf mapping joint outcome tuples to positive
Fractions that sum to exactly 1. Zero-mass outcomes are structurally absent,
which keeps flatness and factorization tests purely combinatorial and avoids
any 0*log(0) convention.

Probabilities are exact; entropies are floats (base-2 logs are irrational).
Independence and functional-dependence tests are decided on the rationals,
never by comparing a float against a tolerance.

Internally, marginal computations run on an integer weight table: every
probability is w/D for a common denominator D, so marginal sums are integer
additions and factorization identities are integer equations. The table is
memoized per instance; all public operations remain pure functions on
immutable values.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from fractions import Fraction
from typing import Callable, Iterable

from .errors import (
    ArityMismatch,
    BudgetExceeded,
    DuplicateOutcome,
    EmptySubset,
    FormatError,
    InvalidProbability,
    NameCollision,
    NonPositiveProbability,
    OutcomeOutOfRange,
    OverlappingSubsets,
    PartialFunction,
    SumNotOne,
    UnknownVariable,
)
from .rational import as_rational, rational_str

DEFAULT_SUPPORT_BUDGET = 10 ** 8

ONE = Fraction(1)


def support_budget() -> int:
    """Maximum number of support entries an operation may materialize.

    The default (1e8) can be overridden with the ENTROSCOPE_BUDGET
    environment variable. Exceeding it raises :class:`BudgetExceeded`
    instead of thrashing.
    """
    raw = os.environ.get("ENTROSCOPE_BUDGET")
    if raw is None:
        return DEFAULT_SUPPORT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise FormatError(f"ENTROSCOPE_BUDGET must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise FormatError("ENTROSCOPE_BUDGET must be positive")
    return value


def _log2_int(w: int) -> float:
    # math.log2 overflows for ints above float range; shift big ints down.
    if w.bit_length() <= 900:
        return math.log2(w)
    shift = w.bit_length() - 53
    return math.log2(w >> shift) + shift


def _entropy_from_weights(weights: Iterable[int], den: int) -> float:
    # H = log2(D) - (1/D) * sum w*log2(w), exact weights w summing to D.
    acc = math.fsum(w * _log2_int(w) for w in weights if w > 1)
    h = _log2_int(den) - acc / den
    return 0.0 if h <= 0.0 else h


class JointDistribution:
    """Immutable joint distribution over named finite-alphabet variables.

    ``variables`` is a tuple of ``(name, alphabet_size)`` pairs; outcomes are
    tuples of ints with ``0 <= value < alphabet_size`` per position. Use
    :func:`make_distribution` to build one with full validation.
    """

    __slots__ = ("variables", "pmf", "_weights", "_marginal_weights")

    def __init__(self, variables, pmf, _validated=False):
        variables = tuple((str(n), int(s)) for n, s in variables)
        pmf = dict(pmf)
        if not _validated:
            _validate(variables, pmf)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "pmf", pmf)
        object.__setattr__(self, "_weights", None)
        object.__setattr__(self, "_marginal_weights", None)

    def __setattr__(self, name, value):
        raise AttributeError("JointDistribution is immutable")

    # -- structure ---------------------------------------------------------

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.variables)

    @property
    def n(self) -> int:
        return len(self.variables)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}; declared: {self.names}")

    def indices_of(self, names: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.index_of(n) for n in names)

    def support_size(self) -> int:
        return len(self.pmf)

    def __eq__(self, other):
        if not isinstance(other, JointDistribution):
            return NotImplemented
        return self.variables == other.variables and self.pmf == other.pmf

    def __hash__(self):
        return hash((self.variables, frozenset(self.pmf.items())))

    def __repr__(self):
        vars_ = ", ".join(f"{n}:{s}" for n, s in self.variables)
        return f"JointDistribution({vars_}; {len(self.pmf)} outcomes)"

    # -- integer weight table ---------------------------------------------

    def weight_table(self) -> tuple[int, dict]:
        """Common denominator D and map outcome -> integer weight (p = w/D)."""
        cached = self._weights
        if cached is None:
            den = 1
            for p in self.pmf.values():
                den = den * p.denominator // math.gcd(den, p.denominator)
            cached = (den, {o: p.numerator * (den // p.denominator)
                            for o, p in self.pmf.items()})
            object.__setattr__(self, "_weights", cached)
        return cached

    def marginal_weights(self, positions: tuple[int, ...]) -> dict:
        """Integer-weight marginal over the given variable positions.

        Marginals are derived from the smallest already-computed superset
        (marginal of a marginal equals the direct marginal), which keeps the
        full-profile computation near-linear in the support size.
        """
        positions = tuple(sorted(positions))
        cache = self._marginal_weights
        if cache is None:
            _, full = self.weight_table()
            cache = {tuple(range(self.n)): full}
            object.__setattr__(self, "_marginal_weights", cache)
        if positions in cache:
            return cache[positions]
        pos_set = set(positions)
        parent = min(
            (key for key in cache if pos_set.issubset(key)),
            key=lambda key: (len(cache[key]), len(key)),
        )
        sel = tuple(parent.index(p) for p in positions)
        out: dict = {}
        get = out.get
        for key, w in cache[parent].items():
            proj = tuple(key[i] for i in sel)
            out[proj] = get(proj, 0) + w
        cache[positions] = out
        return out


def _validate(variables, pmf):
    if not variables:
        raise ArityMismatch("a distribution needs at least one variable")
    names = [n for n, _ in variables]
    if len(set(names)) != len(names):
        raise NameCollision(f"duplicate variable names in {names}")
    for name, size in variables:
        if size < 1:
            raise OutcomeOutOfRange(f"alphabet of {name!r} must be >= 1, got {size}")
    arity = len(variables)
    total = Fraction(0)
    for outcome, p in pmf.items():
        if len(outcome) != arity:
            raise ArityMismatch(
                f"outcome {outcome} has {len(outcome)} components, expected {arity}")
        for (name, size), v in zip(variables, outcome):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < size:
                raise OutcomeOutOfRange(
                    f"value {v!r} for variable {name!r} outside alphabet 0..{size - 1}")
        if not isinstance(p, Fraction):
            raise InvalidProbability(f"probability of {outcome} is not a Fraction")
        if p <= 0:
            raise NonPositiveProbability(f"probability of {outcome} is {p}")
        total += p
    if total != 1:
        raise SumNotOne(total, 1 - total)


def make_distribution(outcomes, variables=None) -> JointDistribution:
    """Build a validated distribution from ``(outcome_tuple, probability)`` pairs.

    Probabilities may be Fractions, ints, ``"num/den"`` strings, or
    ``(num, den)`` pairs; floats are rejected. When ``variables`` is omitted,
    names default to ``x1..xn`` and alphabet sizes to ``max(value)+1``.
    """
    pairs = [(tuple(o), as_rational(p, what="probability")) for o, p in outcomes]
    if not pairs:
        raise SumNotOne(Fraction(0), ONE)
    arity = len(pairs[0][0])
    for o, _ in pairs:
        if len(o) != arity:
            raise ArityMismatch(f"outcome {o} has {len(o)} components, expected {arity}")
    if variables is None:
        sizes = [max(o[i] for o, _ in pairs) + 1 for i in range(arity)]
        variables = [(f"x{i + 1}", s) for i, s in enumerate(sizes)]
    pmf: dict = {}
    for o, p in pairs:
        if o in pmf:
            raise DuplicateOutcome(f"outcome {o} listed twice")
        pmf[o] = p
    return JointDistribution(variables, pmf)


# ---------------------------------------------------------------------------
# core operations


def marginalize(d: JointDistribution, keep: Iterable[str]) -> JointDistribution:
    """Exact marginal onto the (non-empty) subset ``keep`` of d's variables."""
    keep = tuple(keep)
    if not keep:
        raise EmptySubset("cannot marginalize onto the empty set")
    positions = tuple(sorted(d.indices_of(keep)))
    den, _ = d.weight_table()
    marg = d.marginal_weights(positions)
    pmf = {o: Fraction(w, den) for o, w in marg.items()}
    variables = [d.variables[i] for i in positions]
    return JointDistribution(variables, pmf, _validated=True)


def iid_power(d: JointDistribution, n_copies: int) -> JointDistribution:
    """Product of ``n_copies`` independent copies of ``d``.

    Every variable keeps its name and becomes tuple-valued: the N values are
    packed into one integer in base ``alphabet`` (copy t contributes
    ``value_t * alphabet**t``). Profile coordinates scale by exactly N.
    """
    if n_copies < 1:
        raise ArityMismatch(f"need at least one copy, got {n_copies}")
    if n_copies == 1:
        return d
    needed = len(d.pmf) ** n_copies
    cap = support_budget()
    if needed > cap:
        raise BudgetExceeded(needed, cap)
    sizes = [s for _, s in d.variables]
    variables = [(name, s ** n_copies) for name, s in d.variables]
    items = list(d.pmf.items())
    pmf: dict = {}
    for combo in itertools.product(items, repeat=n_copies):
        packed = [0] * len(sizes)
        p = ONE
        for t, (outcome, prob) in enumerate(combo):
            p *= prob
            for i, v in enumerate(outcome):
                packed[i] += v * sizes[i] ** t
        pmf[tuple(packed)] = p
    return JointDistribution(variables, pmf, _validated=True)


def apply_function(d: JointDistribution, sources: Iterable[str],
                   fn: Callable, new_name: str) -> JointDistribution:
    """Extend ``d`` with ``new_name = fn(values of sources)``.

    ``fn`` receives one int per source variable (in declared order) and must
    return a non-negative int for every point of the sources' joint alphabet,
    not just the support. The new variable is deterministic given the
    sources, so H(new | sources) = 0 exactly by construction.
    """
    sources = tuple(sources)
    if not sources:
        raise EmptySubset("need at least one source variable")
    if new_name in d.names:
        raise NameCollision(f"variable {new_name!r} already exists")
    positions = d.indices_of(sources)
    ranges = [range(d.variables[i][1]) for i in positions]
    table: dict = {}
    for combo in itertools.product(*ranges):
        try:
            value = fn(*combo)
        except Exception as exc:
            raise PartialFunction(f"fn failed on {combo}: {exc}") from exc
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise PartialFunction(f"fn({combo}) = {value!r} is not a non-negative int")
        table[combo] = value
    new_size = max(table.values()) + 1
    variables = list(d.variables) + [(new_name, new_size)]
    pmf = {}
    for outcome, p in d.pmf.items():
        key = tuple(outcome[i] for i in positions)
        pmf[outcome + (table[key],)] = p
    return JointDistribution(variables, pmf, _validated=True)


def entropy(d: JointDistribution, subset: Iterable[str] | None = None) -> float:
    """Shannon entropy (bits) of the exact marginal on ``subset``.

    The marginal is computed on the rationals; only the final log/sum is
    floating point.
    """
    names = tuple(subset) if subset is not None else d.names
    if not names:
        raise EmptySubset("entropy of the empty subset is not defined here")
    positions = tuple(sorted(d.indices_of(names)))
    den, _ = d.weight_table()
    marg = d.marginal_weights(positions)
    return _entropy_from_weights(marg.values(), den)


def is_conditionally_independent(d: JointDistribution, a: Iterable[str],
                                 b: Iterable[str], given: Iterable[str] = ()) -> bool:
    """Exact test of I(A;B|C) = 0 as a rational factorization identity.

    True iff for every value of C on its support, the conditional joint of
    (A, B) factorizes: p(abc) * p(c) == p(ac) * p(bc) on the support, and the
    per-C support is the full rectangle (which covers the zero-mass cells).
    With ``given`` empty this is plain independence.
    """
    a, b, c = tuple(a), tuple(b), tuple(given)
    if not a or not b:
        raise EmptySubset("A and B must be non-empty")
    seen: set = set()
    for group in (a, b, c):
        for name in group:
            d.index_of(name)
            if name in seen:
                raise OverlappingSubsets(f"variable {name!r} appears in two subsets")
            seen.add(name)

    pa = tuple(sorted(d.indices_of(a)))
    pb = tuple(sorted(d.indices_of(b)))
    pc = tuple(sorted(d.indices_of(c)))
    pabc = tuple(sorted(pa + pb + pc))
    pac = tuple(sorted(pa + pc))
    pbc = tuple(sorted(pb + pc))

    w_abc = d.marginal_weights(pabc)
    w_ac = d.marginal_weights(pac)
    w_bc = d.marginal_weights(pbc)
    w_c = d.marginal_weights(pc) if pc else {(): d.weight_table()[0]}

    sel_ac = tuple(pabc.index(i) for i in pac)
    sel_bc = tuple(pabc.index(i) for i in pbc)
    sel_c = tuple(pabc.index(i) for i in pc)

    for key, w in w_abc.items():
        k_ac = tuple(key[i] for i in sel_ac)
        k_bc = tuple(key[i] for i in sel_bc)
        k_c = tuple(key[i] for i in sel_c)
        if w * w_c[k_c] != w_ac[k_ac] * w_bc[k_bc]:
            return False
    # Support must be a rectangle within each C-slice: count check suffices.
    per_c_ac: dict = {}
    for key in w_ac:
        k_c = tuple(key[pac.index(i)] for i in pc)
        per_c_ac[k_c] = per_c_ac.get(k_c, 0) + 1
    per_c_bc: dict = {}
    for key in w_bc:
        k_c = tuple(key[pbc.index(i)] for i in pc)
        per_c_bc[k_c] = per_c_bc.get(k_c, 0) + 1
    per_c_abc: dict = {}
    for key in w_abc:
        k_c = tuple(key[i] for i in sel_c)
        per_c_abc[k_c] = per_c_abc.get(k_c, 0) + 1
    for k_c, count in per_c_abc.items():
        if count != per_c_ac[k_c] * per_c_bc[k_c]:
            return False
    return True


def is_functionally_determined(d: JointDistribution, target: Iterable[str],
                               by: Iterable[str]) -> bool:
    """Exact test of H(target | by) = 0: ``by`` determines ``target`` on the
    support. With ``by`` empty, the target must be constant."""
    target = tuple(target)
    if not target:
        raise EmptySubset("target must be non-empty")
    by = tuple(by)
    pt = d.indices_of(target)
    pby = d.indices_of(by)
    seen: dict = {}
    for outcome in d.pmf:
        key = tuple(outcome[i] for i in pby)
        value = tuple(outcome[i] for i in pt)
        if seen.setdefault(key, value) != value:
            return False
    return True


def quasi_uniformity_report(d: JointDistribution) -> dict:
    """Per-subset flatness verdicts.

    For every non-empty variable subset, reports whether the marginal pmf is
    constant on its support. Returns ``{"quasi_uniform": bool, "subsets":
    {key: {"flat": bool, "distinct_values": k, "support": m}}}`` with subset
    keys as concatenated names in declared order.
    """
    names = d.names
    subsets = {}
    overall = True
    for mask in range(1, 2 ** d.n):
        positions = tuple(i for i in range(d.n) if mask >> i & 1)
        marg = d.marginal_weights(positions)
        distinct = len(set(marg.values()))
        flat = distinct == 1
        overall &= flat
        key = "".join(names[i] for i in positions)
        subsets[key] = {
            "flat": flat,
            "distinct_values": distinct,
            "support": len(marg),
        }
    return {"quasi_uniform": overall, "subsets": subsets}


def is_quasi_uniform(d: JointDistribution) -> bool:
    return quasi_uniformity_report(d)["quasi_uniform"]


# ---------------------------------------------------------------------------
# JSON wire format


def distribution_to_json(d: JointDistribution) -> dict:
    """Schema: variables with names/alphabets; outcomes with exact string
    probabilities ``"num/den"``, sorted by outcome tuple."""
    return {
        "variables": [{"name": n, "alphabet": s} for n, s in d.variables],
        "outcomes": [
            {"values": list(o), "p": rational_str(p)}
            for o, p in sorted(d.pmf.items())
        ],
    }


def distribution_from_json(doc) -> JointDistribution:
    """Parse the distribution schema; probabilities must be exact strings
    (JSON numbers, in particular floats, are rejected)."""
    if not isinstance(doc, dict):
        raise FormatError("distribution document must be a JSON object")
    try:
        raw_vars = doc["variables"]
        raw_outcomes = doc["outcomes"]
    except KeyError as exc:
        raise FormatError(f"distribution document missing key {exc}") from exc
    if not isinstance(raw_vars, list) or not isinstance(raw_outcomes, list):
        raise FormatError("'variables' and 'outcomes' must be arrays")
    variables = []
    for entry in raw_vars:
        try:
            variables.append((entry["name"], int(entry["alphabet"])))
        except (TypeError, KeyError) as exc:
            raise FormatError(f"bad variable entry {entry!r}") from exc
    outcomes = []
    for entry in raw_outcomes:
        try:
            values = entry["values"]
            p = entry["p"]
        except (TypeError, KeyError) as exc:
            raise FormatError(f"bad outcome entry {entry!r}") from exc
        if not isinstance(p, str):
            raise FormatError(
                f"probability {p!r} is not a string: exact rational required, "
                "e.g. \"1/162\"")
        outcomes.append((tuple(values), as_rational(p, what="probability")))
    pmf: dict = {}
    for o, p in outcomes:
        if o in pmf:
            raise DuplicateOutcome(f"outcome {o} listed twice")
        pmf[o] = p
    return JointDistribution(variables, pmf)


def load_distribution(path) -> JointDistribution:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON: {exc}") from exc
    return distribution_from_json(doc)
