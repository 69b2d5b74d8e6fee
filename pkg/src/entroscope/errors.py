"""Semantic exception hierarchy.

Every error raised on purpose by this package derives from
:class:`EntroscopeError`, so callers can catch the whole family with one
clause. Errors that carry structured data (an exact defect, a budget, an
input position) expose it as attributes, not only in the message.
"""

from __future__ import annotations


class EntroscopeError(Exception):
    """Base class for all package-specific errors."""


# ---------------------------------------------------------------------------
# distribution construction / manipulation


class InvalidProbability(EntroscopeError):
    """A probability value is not an exact rational (floats are rejected)."""


class NonPositiveProbability(InvalidProbability):
    """A probability value is zero or negative."""


class SumNotOne(EntroscopeError):
    """Probabilities do not sum to exactly 1; carries the exact defect."""

    def __init__(self, total, defect):
        self.total = total
        self.defect = defect
        super().__init__(f"probabilities sum to {total}, defect {defect}")


class ArityMismatch(EntroscopeError):
    """An outcome tuple has the wrong number of components."""


class DuplicateOutcome(EntroscopeError):
    """The same outcome tuple was given twice."""


class OutcomeOutOfRange(EntroscopeError):
    """An outcome component is not an integer within its alphabet."""


class EmptySubset(EntroscopeError):
    """A variable subset that must be non-empty is empty."""


class UnknownVariable(EntroscopeError):
    """A variable name is not declared."""


class NameCollision(EntroscopeError):
    """A new variable name collides with an existing one."""


class PartialFunction(EntroscopeError):
    """A map is not total on the joint alphabet of its source variables."""


class OverlappingSubsets(EntroscopeError):
    """Variable subsets that must be disjoint overlap."""


class BudgetExceeded(EntroscopeError):
    """An operation would materialize more support than allowed."""

    def __init__(self, needed, cap, hint="override with ENTROSCOPE_BUDGET"):
        self.needed = needed
        self.cap = cap
        suffix = f" ({hint})" if hint else ""
        super().__init__(f"support size {needed} exceeds budget {cap}{suffix}")


# ---------------------------------------------------------------------------
# expressions / profiles


class DimensionMismatch(EntroscopeError):
    """Expression and profile disagree on variable count or order."""


class UnsupportedArity(EntroscopeError):
    """Variable count outside the supported range."""


class IrrationalCoefficients(EntroscopeError):
    """An exact-arithmetic path received float coefficients."""


class ExprSyntaxError(EntroscopeError):
    """Expression text does not conform to the grammar.

    Attributes: ``text`` (full input), ``position`` (0-based offset of the
    offending character), ``expected`` (description of what was expected).
    """

    def __init__(self, text, position, expected):
        self.text = text
        self.position = position
        self.expected = expected
        super().__init__(
            f"syntax error at position {position}: expected {expected} "
            f"(near {text[position:position + 12]!r})")


class FormatError(EntroscopeError):
    """A JSON artifact violates its documented schema."""


# ---------------------------------------------------------------------------
# inequality checking / certificates


class ConstraintNotApplicable(EntroscopeError):
    """A constraint is not an independence/determinism pattern and exceeds
    the numeric tolerance, so it can be neither certified nor refuted."""


class ConstraintsNotPinned(EntroscopeError):
    """A constraint of the target inequality is absent from the zero-set."""

    def __init__(self, missing):
        self.missing = tuple(missing)
        names = ", ".join(str(m) for m in self.missing)
        super().__init__(f"constraints not pinned by the zero-set: {names}")


class GapNotPositive(EntroscopeError):
    """A violation certificate was refused; carries the deficit."""

    def __init__(self, deficit, q=None):
        self.deficit = deficit
        self.q = q
        at = f" at q={q}" if q is not None else ""
        super().__init__(f"guaranteed gap not positive{at}: deficit {deficit}")


class NotPrime(EntroscopeError):
    """The field size must be prime."""
