"""The line/point/parabola quadruple over a prime field.

For a prime q, sample on the affine plane over F_q:

* c - a uniform non-vertical line y = c0 + c1 x (q^2 choices),
* a, b - two points of c, picked independently and uniformly (q each),
* d - a uniform parabola y = d0 + d1 x + d2 x^2 (d2 != 0) through a and b;
  when a = b, the intersection quadratic must have a repeated root there
  (the line is tangent). For every (c, a, b) exactly q - 1 parabolas
  qualify, one per leading coefficient d2.

The joint distribution is uniform on its q^4 (q - 1) supported outcomes.
The single parametrization d1 = c1 - d2 (xa + xb), d0 = c0 + d2 xa xb covers
the secant and tangent cases in every characteristic (for xa = xb the
quadratic becomes d2 (x - xa)^2, a repeated root even in characteristic 2,
where the odd-characteristic discriminant story does not apply).

Key exact facts (validated by enumeration for small q, used in closed form
for large q):

    I(c;d) = (q-1)/q          I(c;d|a) = I(c;d|b) = 0
    I(a;b) = H(c|a,b) = log2(q)/q          I(a;b|c) = 0

and the full 15-coordinate profile is also available in closed form: every
marginal except (a,b) and (c,d) is uniform on its support, while those two
are flat on each of two probability levels.

Encodings (documented, stable): point (x, y) -> x q + y; line (c0, c1) ->
c0 q + c1; parabola (d0, d1, d2) -> (d2 - 1) q^2 + d0 q + d1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .distributions import JointDistribution, support_budget
from .errors import BudgetExceeded, NotPrime
from .profile import EntropyProfile, expand_entropy, expand_mutual_info

ORDER = ("a", "b", "c", "d")

MAX_BRUTE_Q = 31  # q^4 (q-1) ~ 2.8e7 outcomes; larger q is closed-form only


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes() -> Iterator[int]:
    n = 2
    while True:
        if is_prime(n):
            yield n
        n += 1


def _require_prime(q: int) -> None:
    if not isinstance(q, int) or not is_prime(q):
        raise NotPrime(f"field size must be a prime integer, got {q!r}")


class PrimeField:
    """Arithmetic mod a checked prime; elements are ints 0..p-1."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        _require_prime(p)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("PrimeField is immutable")

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, self.p - 2, self.p)

    def elements(self):
        return range(self.p)

    def __repr__(self):
        return f"PrimeField({self.p})"


# ---------------------------------------------------------------------------
# construction


@dataclass(frozen=True)
class Quadruple:
    """Decoded outcome: geometric objects behind one support point."""

    q: int
    a: tuple  # point (x, y)
    b: tuple
    line: tuple  # (c0, c1)
    parabola: tuple  # (d0, d1, d2)

    def on_line(self, point) -> bool:
        x, y = point
        c0, c1 = self.line
        return (c0 + c1 * x - y) % self.q == 0

    def on_parabola(self, point) -> bool:
        x, y = point
        d0, d1, d2 = self.parabola
        return (d0 + d1 * x + d2 * x * x - y) % self.q == 0

    def intersection_is_double_root(self) -> bool:
        """The line/parabola intersection quadratic equals d2 (x-xa)(x-xb)."""
        c0, c1 = self.line
        d0, d1, d2 = self.parabola
        xa, xb = self.a[0], self.b[0]
        return ((d1 - c1 + d2 * (xa + xb)) % self.q == 0
                and (d0 - c0 - d2 * xa * xb) % self.q == 0)

    def valid(self) -> bool:
        return (self.on_line(self.a) and self.on_line(self.b)
                and self.on_parabola(self.a) and self.on_parabola(self.b)
                and self.parabola[2] % self.q != 0
                and self.intersection_is_double_root())


def encode_point(q, x, y):
    return x * q + y


def encode_line(q, c0, c1):
    return c0 * q + c1


def encode_parabola(q, d0, d1, d2):
    return (d2 - 1) * q * q + d0 * q + d1


def decode_outcome(q: int, outcome) -> Quadruple:
    ea, eb, ec, ed = outcome
    d2 = ed // (q * q) + 1
    rem = ed % (q * q)
    return Quadruple(
        q=q,
        a=(ea // q, ea % q),
        b=(eb // q, eb % q),
        line=(ec // q, ec % q),
        parabola=(rem // q, rem % q, d2),
    )


def support_size(q: int) -> int:
    return q ** 4 * (q - 1)


def quadruple_distribution(q: int) -> JointDistribution:
    """Exact joint distribution of (a, b, c, d) over F_q, q prime <= 31."""
    _require_prime(q)
    needed = support_size(q)
    if q > MAX_BRUTE_Q:
        raise BudgetExceeded(needed, support_size(MAX_BRUTE_Q),
                             hint=f"enumeration is capped at q <= {MAX_BRUTE_Q}; "
                                  "larger q is served by the closed forms")
    cap = support_budget()
    if needed > cap:
        raise BudgetExceeded(needed, cap)
    p = Fraction(1, needed)
    pmf = {}
    qq = q * q
    for c0 in range(q):
        for c1 in range(q):
            ec = c0 * q + c1
            points = [(x, x * q + (c0 + c1 * x) % q) for x in range(q)]
            for xa, ea in points:
                for xb, eb in points:
                    s = xa + xb
                    prod = xa * xb
                    for d2 in range(1, q):
                        d1 = (c1 - d2 * s) % q
                        d0 = (c0 + d2 * prod) % q
                        ed = (d2 - 1) * qq + d0 * q + d1
                        pmf[(ea, eb, ec, ed)] = p
    variables = [("a", qq), ("b", qq), ("c", qq), ("d", qq * (q - 1))]
    return JointDistribution(variables, pmf, _validated=True)


# ---------------------------------------------------------------------------
# closed forms


def closed_form_quantities(q: int) -> dict:
    """The five quantities that drive every certificate, as floats."""
    _require_prime(q)
    lq = math.log2(q)
    return {
        "I(c;d)": (q - 1) / q,
        "I(c;d|a)": 0.0,
        "I(c;d|b)": 0.0,
        "I(a;b|c)": 0.0,
        "I(a;b)": lq / q,
        "H(c|a,b)": lq / q,
    }


def closed_form_profile(q: int) -> EntropyProfile:
    """All 15 profile coordinates in closed form.

    Uniform-support counts give every coordinate except (a,b) and (c,d):
    (a,b,c) is free (q^4 outcomes); (a,c,d) determines b (the other
    intersection point), so the triples containing c or d and two more
    variables are uniform on q^4 (q-1); the (a,b) and (c,d) marginals are
    flat on two levels, contributing the -log2(q)/q and -(q-1)/q defects.
    Validated against enumeration for small q in the test suite.
    """
    _require_prime(q)
    L = math.log2(q)
    K = math.log2(q - 1) if q > 2 else 0.0
    coords = {
        "a": 2 * L, "b": 2 * L, "c": 2 * L, "d": 2 * L + K,
        "ab": 4 * L - L / q,
        "ac": 3 * L, "bc": 3 * L,
        "ad": 3 * L + K, "bd": 3 * L + K,
        "cd": 4 * L + K - (q - 1) / q,
        "abc": 4 * L,
        "abd": 4 * L + K, "acd": 4 * L + K, "bcd": 4 * L + K,
        "abcd": 4 * L + K,
    }
    keys = ["a", "b", "ab", "c", "ac", "bc", "abc",
            "d", "ad", "bd", "abd", "cd", "acd", "bcd", "abcd"]
    return EntropyProfile(ORDER, np.array([coords[k] for k in keys]))


def structural_zero_expressions() -> tuple:
    """I(c;d|a), I(c;d|b), I(a;b|c): exactly zero on the construction."""
    return (
        expand_mutual_info(ORDER, "c", "d", "a"),
        expand_mutual_info(ORDER, "c", "d", "b"),
        expand_mutual_info(ORDER, "a", "b", "c"),
    )


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class QuantityCheck:
    measured: float
    closed_form: float
    match: bool


@dataclass(frozen=True)
class QuadrupleReport:
    q: int
    support_size: int
    expected_support: int
    uniform: bool
    quantities: dict  # name -> QuantityCheck
    structural_zeros: dict  # name -> bool (certified exactly)
    joint_entropy: float
    joint_entropy_expected: float
    closed_forms_hold: bool
    all_pass: bool

    def to_json(self):
        return {
            "q": self.q,
            "support_size": self.support_size,
            "expected_support": self.expected_support,
            "uniform": self.uniform,
            "quantities": {
                name: {"measured": qc.measured, "closed_form": qc.closed_form,
                       "match": qc.match}
                for name, qc in self.quantities.items()
            },
            "structural_zeros": dict(self.structural_zeros),
            "joint_entropy": self.joint_entropy,
            "joint_entropy_expected": self.joint_entropy_expected,
            "closed_forms_hold": self.closed_forms_hold,
            "all_pass": self.all_pass,
        }


def verify_quadruple(q: int, tol: float = 1e-9) -> QuadrupleReport:
    """Brute-force the construction and compare with the closed forms.

    The three zero constraints are certified structurally (exact rational
    factorization), never by a numeric tolerance. Whether the closed forms
    hold is decided by the enumeration - including at q = 2, where the
    generic counting arguments need checking rather than trusting.
    """
    from .distributions import is_conditionally_independent
    from .profile import profile_of

    d = quadruple_distribution(q)
    prof = profile_of(d)

    def q_I(s, t, given=()):
        return expand_mutual_info(ORDER, s, t, given).evaluate(prof)

    measured = {
        "I(c;d)": q_I("c", "d"),
        "I(c;d|a)": q_I("c", "d", "a"),
        "I(c;d|b)": q_I("c", "d", "b"),
        "I(a;b|c)": q_I("a", "b", "c"),
        "I(a;b)": q_I("a", "b"),
        "H(c|a,b)": expand_entropy(ORDER, "c", ("a", "b")).evaluate(prof),
    }
    closed = closed_form_quantities(q)
    quantities = {
        name: QuantityCheck(measured[name], closed[name],
                            abs(measured[name] - closed[name]) <= tol)
        for name in closed
    }
    zeros = {
        "I(c;d|a)": is_conditionally_independent(d, "c", "d", "a"),
        "I(c;d|b)": is_conditionally_independent(d, "c", "d", "b"),
        "I(a;b|c)": is_conditionally_independent(d, "a", "b", "c"),
    }
    uniform = len(set(d.pmf.values())) == 1
    joint = prof.value(ORDER)
    joint_expected = math.log2(support_size(q))
    closed_ok = all(qc.match for qc in quantities.values())
    all_pass = (closed_ok
                and all(zeros.values())
                and uniform
                and d.support_size() == support_size(q)
                and abs(joint - joint_expected) <= tol)
    return QuadrupleReport(
        q=q,
        support_size=d.support_size(),
        expected_support=support_size(q),
        uniform=uniform,
        quantities=quantities,
        structural_zeros=zeros,
        joint_entropy=joint,
        joint_entropy_expected=joint_expected,
        closed_forms_hold=closed_ok,
        all_pass=all_pass,
    )


# ---------------------------------------------------------------------------
# the unconditional-extension gap


def extension_gap(q: int, lam1, lam2, which: str) -> float:
    """lhs - rhs of an unconditional extension, on the closed forms.

    ``which`` picks the extension family: "ext1" relaxes the two zero
    constraints of the two-term inequality, "ext3" those of the three-term
    one. On this construction the gap reduces to

        ext1:  (q-1)/q - (lam1 + lam2) log2(q)/q
        ext3:  (q-1)/q - log2(q)/q - (lam1 + lam2) log2(q)/q

    A positive value refutes the extension at this q: the body exceeds the
    relaxed right-hand side no matter the multipliers.
    """
    _require_prime(q)
    lam1, lam2 = float(lam1), float(lam2)
    if lam1 < 0 or lam2 < 0:
        raise ValueError("multipliers must be non-negative")
    if which not in ("ext1", "ext3"):
        raise ValueError(f"which must be 'ext1' or 'ext3', got {which!r}")
    lq = math.log2(q)
    gap = (q - 1) / q - (lam1 + lam2) * lq / q
    if which == "ext3":
        gap -= lq / q
    return gap


def minimal_refuting_prime(lam1, lam2, which: str) -> int:
    """Smallest prime q with a positive extension gap.

    Always terminates: the gap tends to 1 as q grows while the relaxation
    terms decay like log2(q)/q.
    """
    for q in primes():
        if extension_gap(q, lam1, lam2, which) > 0:
            return q
    raise AssertionError("unreachable")
