"""Interval boxes for profile limits, and certified conditional violations.

Serializing a base distribution N times, hashing one variable down to its
conditional entropy, or relativizing by a nearly-determined variable moves
the (scaled) entropy profile by at most an explicit first-order slack, while
forcing chosen information quantities to vanish in the N -> infinity limit.
An :class:`AEPointBox` models the limit point of such a pipeline: one
interval per profile coordinate (the slack), plus a symbolic zero-set of
expressions pinned exactly to 0, plus the provenance of applied transforms.

A :class:`ViolationCertificate` for a conditional inequality states that the
body is strictly negative at *every* point of the box while the constraints
hold exactly (they are in the zero-set): a machine-checkable witness that
the limit point - which is a limit of entropic points but not entropic
itself - violates the conditional inequality.

Perturbation accounting is conservative: the worst case is bounded per
informational atom of the body (L1 coefficient mass on perturbed
coordinates times the half-width), with no cancellation across atoms. For
the hash transform only coordinates containing the hashed variable move;
for relativization all coordinates are treated as movable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .catalog import CANONICAL_ORDER, ConditionalInequality, catalog
from .errors import ConstraintsNotPinned, DimensionMismatch, GapNotPositive
from .exprlang import print_canonical
from .profile import (
    EntropyProfile,
    InfoExpression,
    detect_atom,
    expand_entropy,
    expand_mutual_info,
    mask_of,
)
from .quadruple import closed_form_profile, primes, structural_zero_expressions

_CONSISTENCY_FUZZ = 1e-9


def _zero_text(e: InfoExpression) -> str:
    if e.atoms is not None and len(e.atoms) == 1 and e.atoms[0][0] == 1:
        return e.atoms[0][1].text(e.order)
    return print_canonical(e)


class AEPointBox:
    """Per-coordinate intervals around a base profile, plus a zero-set."""

    __slots__ = ("order", "center", "lo", "hi", "half_width", "perturbed",
                 "zero_set", "provenance")

    def __init__(self, order, center, half_width, perturbed, zero_set, provenance):
        order = tuple(order)
        center = np.asarray(center, dtype=float)
        size = 2 ** len(order) - 1
        if center.shape != (size,):
            raise DimensionMismatch(f"center must have {size} coordinates")
        half_width = float(half_width)
        if half_width < 0 or not math.isfinite(half_width):
            raise ValueError(f"half-width must be finite and >= 0, got {half_width}")
        perturbed = frozenset(int(m) for m in perturbed)
        if any(not 1 <= m <= size for m in perturbed):
            raise DimensionMismatch("perturbed mask out of range")
        lo = center.copy()
        hi = center.copy()
        for m in perturbed:
            lo[m - 1] = max(0.0, lo[m - 1] - half_width)
            hi[m - 1] += half_width
        zero_set = tuple(zero_set)
        for z in zero_set:
            if z.order != order:
                raise DimensionMismatch("zero-set expression over a different order")
            lo_val = hi_val = 0.0
            for mask, coef in z.terms.items():
                c = float(coef)
                if c >= 0:
                    lo_val += c * lo[mask - 1]
                    hi_val += c * hi[mask - 1]
                else:
                    lo_val += c * hi[mask - 1]
                    hi_val += c * lo[mask - 1]
            if lo_val > _CONSISTENCY_FUZZ or hi_val < -_CONSISTENCY_FUZZ:
                raise ValueError(
                    f"zero-set entry {_zero_text(z)} inconsistent with the box: "
                    f"interval [{lo_val}, {hi_val}] misses 0")
        for arr in (lo, hi):
            arr.flags.writeable = False
        center.flags.writeable = False
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "half_width", half_width)
        object.__setattr__(self, "perturbed", perturbed)
        object.__setattr__(self, "zero_set", zero_set)
        object.__setattr__(self, "provenance", tuple(provenance))

    def __setattr__(self, name, value):
        raise AttributeError("AEPointBox is immutable")

    def zero_set_texts(self) -> tuple:
        return tuple(_zero_text(z) for z in self.zero_set)

    def pins(self, constraint: InfoExpression) -> bool:
        return any(z == constraint for z in self.zero_set)

    def __repr__(self):
        return (f"AEPointBox(order={self.order}, half_width={self.half_width:.6g}, "
                f"perturbed={len(self.perturbed)}, zero_set={self.zero_set_texts()})")


# ---------------------------------------------------------------------------
# zero propagation rules


def _survives_hash(z: InfoExpression, hashed_bit: int) -> bool:
    """Does a base zero remain exactly zero after hashing one variable?

    Safe cases: the expression does not touch the hashed variable at all
    (those coordinates stay exact), or it is a single atom with the hashed
    variable on a subject side - I(S;T|U) with hashed in S or T, or H(S|T)
    with hashed in S - where replacing the variable by a function of itself
    cannot increase the quantity (data processing).
    """
    involved = 0
    for mask in z.terms:
        involved |= mask
    if not involved & hashed_bit:
        return True
    atom = detect_atom(z)
    if atom is None:
        return False
    if atom.kind == "I":
        return bool((atom.s | atom.t) & hashed_bit) and not atom.u & hashed_bit
    return bool(atom.s & hashed_bit) and not atom.t & hashed_bit


# ---------------------------------------------------------------------------
# transforms


def sw_hash_limit(base: EntropyProfile, hashed: str = "a", given: str = "b",
                  base_zeros: Iterable[InfoExpression] = ()) -> AEPointBox:
    """Limit box after replacing ``hashed`` by its low-rate hash given
    ``given``: coordinates containing the hashed variable move by at most
    I(hashed;given); the mutual information between the hash and ``given``
    vanishes in the limit and joins the zero-set, together with every base
    zero that survives the replacement."""
    order = base.order
    hbit = mask_of(order, [hashed])
    half_width = expand_mutual_info(order, [hashed], [given]).evaluate(base)
    half_width = max(0.0, half_width)
    perturbed = [m for m in range(1, 2 ** len(order)) if m & hbit]
    zero_set = [expand_mutual_info(order, [hashed], [given])]
    for z in base_zeros:
        if _survives_hash(z, hbit) and not any(z == w for w in zero_set):
            zero_set.append(z)
    provenance = ("serialize", f"sw-hash({hashed}|{given})", "scale", "limit")
    return AEPointBox(order, base.coords, half_width, perturbed, zero_set, provenance)


def relativize_limit(base: EntropyProfile, target: str = "c",
                     given: Sequence[str] = ("a", "b"),
                     base_zeros: Iterable[InfoExpression] = ()) -> AEPointBox:
    """Limit box after relativizing by a variable that ``given`` almost
    determines: every coordinate moves by at most H(target|given); the
    conditional entropy itself is pinned to zero, and - when the base
    satisfies it exactly - so is I(given[0];given[1]|target)."""
    order = base.order
    given = tuple(given)
    half_width = expand_entropy(order, [target], given).evaluate(base)
    half_width = max(0.0, half_width)
    perturbed = range(1, 2 ** len(order))
    zero_set = [expand_entropy(order, [target], given)]
    if len(given) == 2:
        preserved = expand_mutual_info(order, [given[0]], [given[1]], [target])
        if any(z == preserved for z in base_zeros):
            zero_set.append(preserved)
    provenance = ("serialize", f"relativize({target}|{','.join(given)})",
                  "scale", "limit")
    return AEPointBox(order, base.coords, half_width, perturbed, zero_set, provenance)


def combined_limit(base: EntropyProfile,
                   base_zeros: Iterable[InfoExpression] = ()) -> AEPointBox:
    """Hash a given b and relativize by c in one pipeline (roles fixed to
    the canonical order): every coordinate moves by at most
    I(a;b) + H(c|a,b), and the zero-set pins I(a;b|c), I(a;b) and H(c|a,b)
    simultaneously. Requires I(a;b|c) = 0 to hold exactly on the base."""
    order = base.order
    if order != CANONICAL_ORDER:
        raise DimensionMismatch(f"combined transform expects order "
                                f"{CANONICAL_ORDER}, got {order}")
    i_ab_c = expand_mutual_info(order, "a", "b", "c")
    if not any(z == i_ab_c for z in base_zeros):
        raise ConstraintsNotPinned([_zero_text(i_ab_c) + " (required of the base)"])
    half_width = (expand_mutual_info(order, "a", "b").evaluate(base)
                  + expand_entropy(order, "c", ("a", "b")).evaluate(base))
    half_width = max(0.0, half_width)
    zero_set = (
        i_ab_c,
        expand_mutual_info(order, "a", "b"),
        expand_entropy(order, "c", ("a", "b")),
    )
    provenance = ("serialize", "sw-hash", "relativize", "scale", "limit")
    return AEPointBox(order, base.coords, half_width,
                      range(1, 2 ** len(order)), zero_set, provenance)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class ViolationCertificate:
    """Guaranteed-gap record: over the whole box, body <= -gap < 0."""

    target: str
    q: int | None
    gap: float
    half_width: float
    body_center: float
    perturbation_mass: float
    zero_set: tuple
    provenance: tuple

    def to_json(self):
        return {
            "target": self.target,
            "q": self.q,
            "gap": self.gap,
            "half_width": self.half_width,
            "body_center": self.body_center,
            "perturbation_mass": self.perturbation_mass,
            "zero_set": list(self.zero_set),
            "provenance": list(self.provenance),
        }


def _perturbation_mass(body: InfoExpression, perturbed: frozenset) -> float:
    if body.atoms is not None:
        total = Fraction(0)
        for coef, atom in body.atoms:
            touched = sum(abs(c) for m, c in atom.expansion().items()
                          if m in perturbed)
            total += abs(Fraction(coef)) * touched
        return float(total)
    return float(sum(abs(float(c)) for m, c in body.terms.items() if m in perturbed))


def certify_violation(box: AEPointBox, ineq: ConditionalInequality,
                      q: int | None = None) -> ViolationCertificate:
    """Certify that ``ineq`` fails everywhere on the box.

    Refuses (:class:`ConstraintsNotPinned`) unless every constraint of the
    inequality appears in the zero-set - numeric near-zero never counts.
    The guaranteed gap is

        gap = -(body at the box center) - mass * half_width

    where ``mass`` bounds, atom by atom, how much the body can move when
    every perturbed coordinate shifts by the half-width. A positive gap
    means the body is <= -gap at every point of the box, while the
    constraints hold exactly: a certified violation. Otherwise
    :class:`GapNotPositive` reports the deficit.
    """
    if box.order != ineq.order:
        raise DimensionMismatch(f"box order {box.order} does not match "
                                f"inequality order {ineq.order}")
    missing = [print_canonical(c) for c in ineq.constraints if not box.pins(c)]
    if missing:
        raise ConstraintsNotPinned(missing)
    center_profile = EntropyProfile(box.order, box.center)
    body_center = ineq.body.evaluate(center_profile)
    mass = _perturbation_mass(ineq.body, box.perturbed)
    gap = -body_center - mass * box.half_width
    if gap <= 0:
        raise GapNotPositive(-gap, q=q)
    return ViolationCertificate(
        target=ineq.name,
        q=q,
        gap=gap,
        half_width=box.half_width,
        body_center=body_center,
        perturbation_mass=mass,
        zero_set=box.zero_set_texts(),
        provenance=box.provenance,
    )


def verify_certificate(cert: ViolationCertificate, box: AEPointBox,
                       ineq: ConditionalInequality, tol: float = 1e-12) -> bool:
    """Recompute the certificate invariant from the box and inequality."""
    if any(not box.pins(c) for c in ineq.constraints):
        return False
    if set(cert.zero_set) != set(box.zero_set_texts()):
        return False
    body_center = ineq.body.evaluate(EntropyProfile(box.order, box.center))
    mass = _perturbation_mass(ineq.body, box.perturbed)
    gap = -body_center - mass * box.half_width
    return gap > 0 and abs(gap - cert.gap) <= tol


@dataclass(frozen=True)
class CombinedCertificate:
    """One box, one zero-set, two inequalities violated simultaneously."""

    q: int | None
    half_width: float
    zero_set: tuple
    provenance: tuple
    parts: dict  # name -> ViolationCertificate

    def to_json(self):
        return {
            "target": "both",
            "q": self.q,
            "half_width": self.half_width,
            "zero_set": list(self.zero_set),
            "provenance": list(self.provenance),
            "certificates": {name: cert.to_json()
                             for name, cert in sorted(self.parts.items())},
        }


TARGETS = ("cond1", "cond3", "both")


def box_for_target(target: str, q: int) -> AEPointBox:
    """The limit box that pins the constraints of the given target, built
    from the closed-form profile of the quadruple at prime q."""
    base = closed_form_profile(q)
    zeros = structural_zero_expressions()
    if target == "cond1":
        return sw_hash_limit(base, "a", "b", zeros)
    if target == "cond3":
        return relativize_limit(base, "c", ("a", "b"), zeros)
    if target == "both":
        return combined_limit(base, zeros)
    raise ValueError(f"target must be one of {TARGETS}, got {target!r}")


def certificate_at(target: str, q: int):
    """Certificate for a fixed prime q (raises GapNotPositive if too small)."""
    cat = catalog()
    box = box_for_target(target, q)
    if target == "both":
        parts = {}
        for name in ("cond1", "cond3"):
            parts[name] = certify_violation(box, cat.conditional[name], q=q)
        return CombinedCertificate(q, box.half_width, box.zero_set_texts(),
                                   box.provenance, parts)
    return certify_violation(box, cat.conditional[target], q=q)


def minimal_certifying_prime(target: str):
    """Scan primes upward; return (q, certificate) at the first success.

    Terminates for every target: the guaranteed gap approaches 1 as q grows
    while the slack terms decay like log2(q)/q.
    """
    if target not in TARGETS:
        raise ValueError(f"target must be one of {TARGETS}, got {target!r}")
    for q in primes():
        try:
            return q, certificate_at(target, q)
        except GapNotPositive:
            continue
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# the robust side of the story


def matus_star_value(p: EntropyProfile, k: int) -> float:
    """Slack of the k-indexed parametric inequality at the profile."""
    return catalog().matus_star(k).evaluate(p)


@dataclass(frozen=True)
class RobustnessBound:
    epsilon: float
    k: int


def cond4_robustness_bound(p: EntropyProfile, slack: float,
                           k_cap: int = 10 ** 6) -> RobustnessBound:
    """How far the soft version of the fourth conditional inequality can sag.

    Given an upper bound ``slack`` on I(a;c|d) + I(a;d|c) at the profile,
    minimizing the parametric slack over integer k bounds the possible
    violation of the body by

        eps(k) = (1/k) I(c;d|a) + ((k+1)/2) slack .

    The integer minimizer sits near sqrt(2 I(c;d|a) / slack); the scan
    covers k up to ceil of that plus 2. With zero slack the bound decays
    like I(c;d|a)/k, reported at ``k_cap``. This trade-off is why the bound
    is not linear in the slack.
    """
    if slack < 0:
        raise ValueError("slack must be non-negative")
    icda = expand_mutual_info(p.order, [p.order[2]], [p.order[3]],
                              [p.order[0]]).evaluate(p)
    icda = max(0.0, icda)
    if slack == 0:
        if icda == 0:
            return RobustnessBound(0.0, 1)
        return RobustnessBound(icda / k_cap, k_cap)
    k_max = min(k_cap, math.ceil(math.sqrt(2 * icda / slack)) + 2)
    best_k, best = 1, None
    for k in range(1, max(2, k_max + 1)):
        eps = icda / k + (k + 1) / 2 * slack
        if best is None or eps < best:
            best, best_k = eps, k
    return RobustnessBound(best, best_k)
