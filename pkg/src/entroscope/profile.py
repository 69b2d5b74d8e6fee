"""Entropy profiles and linear functionals over subset-entropy coordinates.

A profile for variables (v1..vn) is the vector of the 2^n - 1 marginal
entropies, one per non-empty subset. Subsets are bitmasks over the declared
variable order (bit i = i-th variable); coordinate index = mask - 1, so the
vector runs a, b, ab, c, ac, bc, abc, ... This convention is stable and is
the one used by every JSON artifact.

An :class:`InfoExpression` is a sparse linear functional over those
coordinates. Expressions built from entropy/mutual-information atoms keep
the atom decomposition alongside the canonical coefficient map; the map is
the semantic identity (equality, printing), while the atoms feed the
conservative perturbation accounting of the limit-box certificates.

Coefficients are exact (int/Fraction) unless a caller explicitly supplies
floats; exact-arithmetic consumers reject float coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .distributions import JointDistribution, _entropy_from_weights
from .errors import (
    DimensionMismatch,
    EmptySubset,
    FormatError,
    OverlappingSubsets,
    UnknownVariable,
)

Coef = Fraction | float


def _as_coef(value) -> Coef:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite coefficient {value!r}")
        return value
    raise TypeError(f"coefficient must be int, Fraction or float, got {type(value)}")


# ---------------------------------------------------------------------------
# subset masks


def mask_of(order: Sequence[str], names: Iterable[str]) -> int:
    """Bitmask of a subset given by variable names."""
    mask = 0
    for name in names:
        try:
            i = order.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}; declared: {tuple(order)}")
        mask |= 1 << i
    return mask


def names_of(order: Sequence[str], mask: int) -> tuple[str, ...]:
    return tuple(order[i] for i in range(len(order)) if mask >> i & 1)


def subset_key(order: Sequence[str], mask: int) -> str:
    """Concatenated names in declared order; the JSON key for a subset."""
    return "".join(names_of(order, mask))


def subset_text(order: Sequence[str], mask: int) -> str:
    """Comma-separated names, as printed inside H(...) / I(...)."""
    return ",".join(names_of(order, mask))


# ---------------------------------------------------------------------------
# atoms: the named informational quantities


@dataclass(frozen=True)
class Atom:
    """H(S|T) (kind "H", t may be 0) or I(S;T|U) (kind "I", u may be 0)."""

    kind: str
    s: int
    t: int
    u: int = 0

    def text(self, order: Sequence[str]) -> str:
        if self.kind == "H":
            inner = subset_text(order, self.s)
            if self.t:
                inner += "|" + subset_text(order, self.t)
            return f"H({inner})"
        inner = subset_text(order, self.s) + ";" + subset_text(order, self.t)
        if self.u:
            inner += "|" + subset_text(order, self.u)
        return f"I({inner})"

    def expansion(self) -> dict[int, Fraction]:
        """Inclusion-exclusion expansion into subset coordinates."""
        out: dict[int, Fraction] = {}

        def bump(mask, c):
            if mask:
                new = out.get(mask, Fraction(0)) + c
                if new:
                    out[mask] = new
                else:
                    out.pop(mask, None)

        one = Fraction(1)
        if self.kind == "H":
            bump(self.s | self.t, one)
            bump(self.t, -one)
        else:
            bump(self.s | self.u, one)
            bump(self.t | self.u, one)
            bump(self.s | self.t | self.u, -one)
            bump(self.u, -one)
        return out


def _check_disjoint(order, *masks):
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if a & b:
                raise OverlappingSubsets(
                    f"subsets overlap on {names_of(order, a & b)}")


# ---------------------------------------------------------------------------
# expressions


class InfoExpression:
    """Sparse linear functional over subset-entropy coordinates.

    ``terms`` maps mask -> non-zero coefficient (canonical form). ``atoms``
    is an optional provenance decomposition: pairs ``(coef, Atom)`` whose
    expansions sum to ``terms``. Equality and hashing use the canonical map
    only.
    """

    __slots__ = ("order", "terms", "atoms")

    def __init__(self, order, terms: Mapping[int, Coef], atoms=None):
        order = tuple(order)
        full = (1 << len(order)) - 1
        clean: dict[int, Coef] = {}
        for mask, coef in terms.items():
            if not 1 <= mask <= full:
                raise DimensionMismatch(f"mask {mask} out of range for n={len(order)}")
            coef = _as_coef(coef)
            if coef != 0:
                clean[int(mask)] = coef
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "atoms", tuple(atoms) if atoms is not None else None)

    def __setattr__(self, name, value):
        raise AttributeError("InfoExpression is immutable")

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.terms.values())

    def rational_terms(self) -> dict[int, Fraction]:
        from .errors import IrrationalCoefficients

        if not self.is_rational:
            bad = [c for c in self.terms.values() if not isinstance(c, Fraction)]
            raise IrrationalCoefficients(
                f"expression has float coefficients {bad[:3]}; exact-arithmetic "
                "paths need int/Fraction coefficients")
        return dict(self.terms)

    # -- algebra -----------------------------------------------------------

    def _combine(self, other, sign):
        if not isinstance(other, InfoExpression):
            return NotImplemented
        if self.order != other.order:
            raise DimensionMismatch(
                f"variable orders differ: {self.order} vs {other.order}")
        terms = dict(self.terms)
        for mask, coef in other.terms.items():
            new = terms.get(mask, 0) + sign * coef
            if new == 0 and isinstance(new, (int, Fraction)):
                terms.pop(mask, None)
            else:
                terms[mask] = new
        atoms = None
        if self.atoms is not None and other.atoms is not None:
            atoms = self.atoms + tuple((sign * c, a) for c, a in other.atoms)
        return InfoExpression(self.order, terms, atoms)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        scalar = _as_coef(scalar)
        if scalar == 0:
            return InfoExpression(self.order, {}, ())
        terms = {m: scalar * c for m, c in self.terms.items()}
        atoms = None
        if self.atoms is not None:
            atoms = tuple((scalar * c, a) for c, a in self.atoms)
        return InfoExpression(self.order, terms, atoms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, InfoExpression):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.order, frozenset(self.terms.items())))

    def __repr__(self):
        from .exprlang import print_canonical

        return f"<InfoExpression {print_canonical(self)!r}>"

    # -- evaluation --------------------------------------------------------

    def evaluate(self, profile: "EntropyProfile") -> float:
        if profile.order != self.order:
            raise DimensionMismatch(
                f"profile order {profile.order} does not match expression "
                f"order {self.order}")
        coords = profile.coords
        return math.fsum(float(c) * coords[m - 1] for m, c in self.terms.items())


def expand_entropy(order: Sequence[str], s: Iterable[str],
                   given: Iterable[str] = ()) -> InfoExpression:
    """H(S | T) = H(S u T) - H(T) as an InfoExpression."""
    order = tuple(order)
    sm, tm = mask_of(order, s), mask_of(order, given)
    if not sm:
        raise EmptySubset("H() needs a non-empty subject subset")
    _check_disjoint(order, sm, tm)
    atom = Atom("H", sm, tm)
    return InfoExpression(order, atom.expansion(), ((Fraction(1), atom),))


def expand_mutual_info(order: Sequence[str], s: Iterable[str], t: Iterable[str],
                       given: Iterable[str] = ()) -> InfoExpression:
    """I(S ; T | U) = H(SU) + H(TU) - H(STU) - H(U) as an InfoExpression."""
    order = tuple(order)
    sm, tm, um = mask_of(order, s), mask_of(order, t), mask_of(order, given)
    if not sm or not tm:
        raise EmptySubset("I() needs non-empty subsets on both sides")
    _check_disjoint(order, sm, tm, um)
    atom = Atom("I", sm, tm, um)
    return InfoExpression(order, atom.expansion(), ((Fraction(1), atom),))


def zero_expression(order: Sequence[str]) -> InfoExpression:
    return InfoExpression(tuple(order), {}, ())


def detect_atom(e: InfoExpression) -> Atom | None:
    """Recognize an expression as a single H(S|T) or I(S;T|U) quantity.

    Works from the canonical coefficient map (unit coefficients in the
    inclusion-exclusion pattern), so it applies to parsed and hand-built
    expressions alike; returns None for anything else.
    """
    if e.atoms is not None and len(e.atoms) == 1 and e.atoms[0][0] == 1:
        return e.atoms[0][1]
    terms = e.terms
    pos = sorted(m for m, c in terms.items() if c == 1)
    neg = sorted(m for m, c in terms.items() if c == -1)
    if len(pos) + len(neg) != len(terms):
        return None
    if len(pos) == 1 and len(neg) == 0:
        return Atom("H", pos[0], 0)
    if len(pos) == 1 and len(neg) == 1 and neg[0] & pos[0] == neg[0]:
        return Atom("H", pos[0] ^ neg[0], neg[0])
    if len(pos) == 2 and len(neg) == 1:
        a, b = pos
        if a & b == 0 and neg[0] == a | b:
            return Atom("I", a, b, 0)
    if len(pos) == 2 and len(neg) == 2:
        a, b = pos
        u = a & b
        if u and set(neg) == {a | b, u}:
            return Atom("I", a ^ u, b ^ u, u)
    return None


# ---------------------------------------------------------------------------
# profiles


class EntropyProfile:
    """Vector of subset entropies (bits), indexed by mask - 1."""

    __slots__ = ("order", "coords")

    def __init__(self, order, coords):
        order = tuple(order)
        coords = np.asarray(coords, dtype=float).copy()
        if coords.shape != (2 ** len(order) - 1,):
            raise DimensionMismatch(
                f"need {2 ** len(order) - 1} coordinates for n={len(order)}, "
                f"got shape {coords.shape}")
        if not np.all(np.isfinite(coords)):
            raise FormatError("profile coordinates must be finite")
        coords[coords == 0.0] = 0.0  # normalize -0.0
        if np.any(coords < 0):
            raise FormatError("profile coordinates must be non-negative")
        coords.flags.writeable = False
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("EntropyProfile is immutable")

    @property
    def n(self) -> int:
        return len(self.order)

    def value(self, names: Iterable[str]) -> float:
        mask = mask_of(self.order, names)
        if not mask:
            raise EmptySubset("no coordinate for the empty subset")
        return float(self.coords[mask - 1])

    def __getitem__(self, key):
        if isinstance(key, int):
            return float(self.coords[key - 1])
        if isinstance(key, str):
            return self.value([key]) if key in self.order else self.value(list(key))
        return self.value(key)

    def scale(self, factor: float) -> "EntropyProfile":
        factor = float(factor)
        if factor <= 0:
            raise ValueError(f"scale factor must be positive, got {factor}")
        return EntropyProfile(self.order, self.coords * factor)

    def __eq__(self, other):
        if not isinstance(other, EntropyProfile):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.coords, other.coords)

    def __repr__(self):
        return f"EntropyProfile({self.order}, {np.array2string(self.coords, precision=6)})"

    def allclose(self, other: "EntropyProfile", tol: float = 1e-9) -> bool:
        return (self.order == other.order
                and bool(np.all(np.abs(self.coords - other.coords) <= tol)))


def profile_of(d: JointDistribution) -> EntropyProfile:
    """All 2^n - 1 marginal entropies of the distribution, exactly marginalized."""
    n = d.n
    den, _ = d.weight_table()
    coords = np.empty(2 ** n - 1)
    masks = sorted(range(1, 2 ** n), key=lambda m: -bin(m).count("1"))
    for mask in masks:
        positions = tuple(i for i in range(n) if mask >> i & 1)
        weights = d.marginal_weights(positions)
        coords[mask - 1] = _entropy_from_weights(weights.values(), den)
    return EntropyProfile(d.names, coords)


# ---------------------------------------------------------------------------
# elemental (minimal) Shannon inequalities and checks built on them


def elemental_expressions(order: Sequence[str]) -> list[InfoExpression]:
    """The minimal generating set of Shannon inequalities for these variables:
    H(i | rest) >= 0 for each i, and I(i;j|K) >= 0 for all i<j and K
    disjoint. Count: n + C(n,2) * 2^(n-2)."""
    order = tuple(order)
    n = len(order)
    full = (1 << n) - 1
    out = []
    for i in range(n):
        rest = full ^ (1 << i)
        atom = Atom("H", 1 << i, rest)
        out.append(InfoExpression(order, atom.expansion(), ((Fraction(1), atom),)))
    for i in range(n - 1):
        for j in range(i + 1, n):
            others = [k for k in range(n) if k != i and k != j]
            for sub in range(1 << len(others)):
                kmask = 0
                for b, k in enumerate(others):
                    if sub >> b & 1:
                        kmask |= 1 << k
                atom = Atom("I", 1 << i, 1 << j, kmask)
                out.append(InfoExpression(order, atom.expansion(),
                                          ((Fraction(1), atom),)))
    return out


def elemental_count(n: int) -> int:
    return n + math.comb(n, 2) * 2 ** (n - 2) if n >= 2 else n


@dataclass(frozen=True)
class PolymatroidVerdict:
    ok: bool
    violations: tuple  # (inequality text, value) pairs, value < -tol
    checked: int

    def __bool__(self):
        return self.ok


def polymatroid_check(p: EntropyProfile, tol: float = 1e-9) -> PolymatroidVerdict:
    """Evaluate every elemental inequality on the profile; list violations."""
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    violations = []
    exprs = elemental_expressions(p.order)
    for e in exprs:
        value = e.evaluate(p)
        if value < -tol:
            violations.append((e.atoms[0][1].text(p.order), value))
    return PolymatroidVerdict(not violations, tuple(violations), len(exprs))


def is_polymatroid(p: EntropyProfile, tol: float = 1e-9) -> bool:
    return polymatroid_check(p, tol).ok


def ingleton_expression(order: Sequence[str],
                        roles: Sequence[str] | None = None) -> InfoExpression:
    """Ingleton slack for role assignment (w, x, y, z):

        I(y;z|w) + I(y;z|x) + I(w;x) - I(y;z)

    Non-negative for every profile coming from linear ranks; >= 0 means this
    Ingleton instance is satisfied. Under the natural order (a,b,c,d) this is
    the instance the line/parabola quadruple violates.
    """
    order = tuple(order)
    if len(order) != 4:
        raise DimensionMismatch(f"Ingleton needs exactly 4 variables, got {len(order)}")
    w, x, y, z = roles if roles is not None else order
    return (expand_mutual_info(order, [y], [z], [w])
            + expand_mutual_info(order, [y], [z], [x])
            + expand_mutual_info(order, [w], [x])
            - expand_mutual_info(order, [y], [z]))


def ingleton(p: EntropyProfile, roles: Sequence[str] | None = None) -> float:
    return ingleton_expression(p.order, roles).evaluate(p)


# ---------------------------------------------------------------------------
# JSON wire format


def profile_to_json(p: EntropyProfile) -> dict:
    return {
        "n": p.n,
        "order": list(p.order),
        "coords": {subset_key(p.order, m): float(p.coords[m - 1])
                   for m in range(1, 2 ** p.n)},
    }


def profile_from_json(doc) -> EntropyProfile:
    if not isinstance(doc, dict):
        raise FormatError("profile document must be a JSON object")
    try:
        order = tuple(doc["order"])
        raw = doc["coords"]
    except KeyError as exc:
        raise FormatError(f"profile document missing key {exc}") from exc
    n = doc.get("n", len(order))
    if n != len(order):
        raise FormatError(f"profile 'n'={n} does not match order of length {len(order)}")
    expected = {subset_key(order, m): m for m in range(1, 2 ** len(order))}
    if set(raw) != set(expected):
        missing = sorted(set(expected) - set(raw))[:4]
        extra = sorted(set(raw) - set(expected))[:4]
        raise FormatError(f"profile coords keys wrong; missing={missing} extra={extra}")
    coords = np.empty(2 ** len(order) - 1)
    for key, mask in expected.items():
        value = raw[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise FormatError(f"coordinate {key!r} must be a number")
        coords[mask - 1] = float(value)
    return EntropyProfile(order, coords)
