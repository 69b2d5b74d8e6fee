"""Textual mini-language for information expressions.

Grammar (whitespace free between tokens):

    expr   := ["+"|"-"] term (("+"|"-") term)*  |  "0"
    term   := [coef "*"] atom
    atom   := "H(" vars ["|" vars] ")"  |  "I(" vars ";" vars ["|" vars] ")"
    vars   := name ("," name)*
    coef   := integer | integer "/" integer | decimal
    name   := letter (letter | digit | "_")*

The bare "0" and the optional leading sign are conservative extensions of
the core grammar so that every canonical printout (including the zero
expression) parses back. Decimal coefficients are expanded exactly
(``2.5 -> 5/2``); no floats enter the expression.

``parse(print_canonical(e)) == e`` holds with exact coefficient equality;
float coefficients are printed as their exact binary rational.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .errors import ExprSyntaxError
from .profile import (
    InfoExpression,
    expand_entropy,
    expand_mutual_info,
    subset_text,
    zero_expression,
)

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<number>\d+(?:\.\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<sym>[-+*/();,|])"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprSyntaxError(text, pos, "a token")
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, order):
        self.text = text
        self.order = tuple(order)
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        raise ExprSyntaxError(self.text, self.peek()[2], expected)

    def expect_sym(self, sym):
        kind, value, _ = self.peek()
        if kind != "sym" or value != sym:
            self.fail(f"'{sym}'")
        return self.take()

    # expr := ["+"|"-"] term (("+"|"-") term)*
    def parse_expr(self):
        sign = 1
        kind, value, _ = self.peek()
        if kind == "sym" and value in "+-":
            self.take()
            sign = -1 if value == "-" else 1
        acc = self.parse_term() * sign
        while True:
            kind, value, _ = self.peek()
            if kind == "sym" and value in "+-":
                self.take()
                term = self.parse_term()
                acc = acc + term if value == "+" else acc - term
            else:
                break
        kind, _, _ = self.peek()
        if kind != "eof":
            self.fail("'+', '-' or end of input")
        return acc

    # term := [coef "*"] atom      (bare "0" allowed as the zero term)
    def parse_term(self):
        kind, value, _ = self.peek()
        if kind == "number":
            coef = self.parse_coef()
            kind, value, _ = self.peek()
            if kind == "sym" and value == "*":
                self.take()
                return self.parse_atom() * coef
            if coef == 0:
                return zero_expression(self.order)
            self.fail("'*' followed by H(...) or I(...)")
        return self.parse_atom()

    def parse_coef(self) -> Fraction:
        kind, value, _ = self.take()
        if "." in value:
            return Fraction(value)  # exact decimal expansion
        num = int(value)
        kind, nxt, _ = self.peek()
        if kind == "sym" and nxt == "/":
            self.take()
            kind, den, _ = self.peek()
            if kind != "number" or "." in den:
                self.fail("an integer denominator")
            self.take()
            if int(den) == 0:
                self.fail("a non-zero denominator")
            return Fraction(num, int(den))
        return Fraction(num)

    def parse_atom(self):
        kind, value, _ = self.peek()
        if kind != "name" or value not in ("H", "I"):
            self.fail("H(...) or I(...)")
        self.take()
        self.expect_sym("(")
        first = self.parse_vars()
        if value == "H":
            given = ()
            kind, nxt, _ = self.peek()
            if kind == "sym" and nxt == "|":
                self.take()
                given = self.parse_vars()
            self.expect_sym(")")
            return expand_entropy(self.order, first, given)
        self.expect_sym(";")
        second = self.parse_vars()
        given = ()
        kind, nxt, _ = self.peek()
        if kind == "sym" and nxt == "|":
            self.take()
            given = self.parse_vars()
        self.expect_sym(")")
        return expand_mutual_info(self.order, first, second, given)

    def parse_vars(self):
        names = [self.parse_name()]
        while True:
            kind, value, _ = self.peek()
            if kind == "sym" and value == ",":
                self.take()
                names.append(self.parse_name())
            else:
                return tuple(names)

    def parse_name(self):
        kind, value, _ = self.peek()
        if kind != "name":
            self.fail("a variable name")
        self.take()
        return value


def parse(text: str, order: Sequence[str]) -> InfoExpression:
    """Parse expression text over the declared variable order.

    Raises :class:`ExprSyntaxError` (with position and expectation) on
    malformed input, :class:`UnknownVariable` for undeclared names, and
    :class:`OverlappingSubsets` for atoms like I(a;a).
    """
    return _Parser(text, order).parse_expr()


# ---------------------------------------------------------------------------
# printing


def _magnitude_str(coef) -> str:
    if isinstance(coef, float):
        coef = Fraction(coef)  # exact binary expansion keeps round-trips exact
    if coef.denominator == 1:
        return "" if coef.numerator == 1 else f"{coef.numerator}*"
    return f"{coef.numerator}/{coef.denominator}*"


def print_canonical(e: InfoExpression) -> str:
    """Deterministic text: subset index ascending, exact coefficients.

    The output is pure H(...) terms (the canonical coordinates), so one
    round of canonicalization is a fixpoint: parse(print(e)) == e.
    """
    if e.is_zero:
        return "0"
    parts = []
    for mask in sorted(e.terms):
        coef = e.terms[mask]
        negative = coef < 0
        mag = _magnitude_str(-coef if negative else coef)
        body = f"{mag}H({subset_text(e.order, mask)})"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)


def atom_texts(e: InfoExpression) -> tuple[str, ...]:
    """Human-oriented rendering of the atom decomposition, when present."""
    if e.atoms is None:
        return ()
    out = []
    for coef, atom in e.atoms:
        mag = _magnitude_str(coef if coef >= 0 else -coef)
        sign = "-" if coef < 0 else "+"
        out.append(f"{sign}{mag}{atom.text(e.order)}")
    return tuple(out)
