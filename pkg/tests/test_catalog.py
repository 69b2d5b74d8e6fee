"""Inequality catalog and conditional checking."""

import math
from fractions import Fraction

import pytest

import entroscope as E
from entroscope.catalog import (
    CANONICAL_ORDER,
    ConditionalInequality,
    catalog,
    check_conditional,
)
from entroscope.errors import ConstraintNotApplicable, DimensionMismatch
from entroscope.profile import expand_entropy, expand_mutual_info

from conftest import independent_bits

ORDER = CANONICAL_ORDER


def _I(s, t, g=()):
    return expand_mutual_info(ORDER, s, t, g)


def _H(s, g=()):
    return expand_entropy(ORDER, s, g)


# ---------------------------------------------------------------------------
# catalog contents


def test_catalog_has_six_families_plus_basic():
    cat = catalog()
    assert cat.family_names == ("zy98", "cond1", "cond2", "cond3", "cond4",
                                "matus-star(k)")
    assert len(cat.basic) == 28
    assert "ingleton" in cat.unconditional


def test_frozen_names_resolve():
    cat = catalog()
    for name in ("zy98", "ingleton", "cond1", "cond2", "cond3", "cond4",
                 "matus-star(3)", "basic"):
        cat.get(name)
    with pytest.raises(KeyError):
        cat.get("zy99")


def test_matus_star_k1_is_zy98():
    cat = catalog()
    assert cat.matus_star(1) == cat.unconditional["zy98"]


def test_matus_star_coefficients_at_k1():
    atoms = catalog().matus_star(1).atoms
    by_text = {}
    for coef, atom in atoms:
        by_text[atom.text(ORDER)] = by_text.get(atom.text(ORDER), Fraction(0)) + coef
    assert by_text["I(c;d|a)"] == 2          # 1 + 1/k at k=1
    assert by_text["I(a;c|d)"] == 1          # (k+1)/2 at k=1
    assert by_text["I(a;d|c)"] == 1
    assert by_text["I(c;d)"] == -1


def test_matus_star_rejects_bad_k():
    with pytest.raises(ValueError):
        catalog().matus_star(0)


def test_cond1_shape():
    ineq = catalog().conditional["cond1"]
    assert ineq.constraints == (_I("a", "b", "c"), _I("a", "b"))
    assert ineq.body == _I("c", "d", "a") + _I("c", "d", "b") - _I("c", "d")


def test_cond3_shape():
    ineq = catalog().conditional["cond3"]
    assert ineq.constraints == (_I("a", "b", "c"), _H("c", ("a", "b")))
    assert ineq.body == (_I("c", "d", "a") + _I("c", "d", "b") + _I("a", "b")
                         - _I("c", "d"))


def test_zy98_nonnegative_on_quadruple(quadruple_profiles):
    assert catalog().unconditional["zy98"].evaluate(quadruple_profiles(3)) >= -1e-9


# ---------------------------------------------------------------------------
# conditional checking


def test_cond1_applicable_on_independent_bits():
    d = independent_bits(ORDER)
    verdict = check_conditional(catalog().conditional["cond1"], d)
    assert verdict.applicable
    assert all(c.method == "structural" for c in verdict.constraints)
    assert verdict.holds and abs(verdict.body_value) <= 1e-9


@pytest.mark.parametrize("q", [3, 5])
def test_cond1_not_applicable_on_quadruple(quadruples, q):
    verdict = check_conditional(catalog().conditional["cond1"], quadruples(q))
    assert not verdict.applicable
    failing = {c.text: c for c in verdict.constraints if not c.satisfied}
    assert list(failing) == ["H(a) + H(b) - H(a,b)"]  # I(a;b) = 0 fails
    check = failing["H(a) + H(b) - H(a,b)"]
    assert check.method == "structural"
    assert abs(check.value - math.log2(q) / q) <= 1e-9
    assert verdict.body_value is None and verdict.holds is None


def test_cond3_fails_determinism_on_quadruple(quadruples):
    verdict = check_conditional(catalog().conditional["cond3"], quadruples(3))
    assert not verdict.applicable
    failing = [c for c in verdict.constraints if not c.satisfied]
    assert len(failing) == 1
    assert abs(failing[0].value - math.log2(3) / 3) <= 1e-9  # H(c|a,b)


def test_cond_bodies_nonnegative_when_certified():
    bits = independent_bits(ORDER)
    # cond3 needs H(c|a,b) = 0: constant c qualifies and keeps I(a;b|c) = 0
    const_c = E.make_distribution(
        [((x, y, 0, z), "1/8") for x in (0, 1) for y in (0, 1) for z in (0, 1)],
        [("a", 2), ("b", 2), ("c", 1), ("d", 2)])
    applicable_on = {"cond1": bits, "cond2": bits, "cond3": const_c, "cond4": bits}
    for name, ineq in catalog().conditional.items():
        verdict = check_conditional(ineq, applicable_on[name])
        assert verdict.applicable, name
        assert verdict.holds, name
        assert all(c.method == "structural" for c in verdict.constraints)


def test_unrecognized_constraint_exceeding_tolerance_raises():
    # H(a) - H(b) is not an independence/determinism pattern
    weird = ConditionalInequality(
        "weird", ORDER, (_H("a") - _H("b"),), _I("a", "b"))
    d = E.apply_function(
        E.apply_function(independent_bits(("a", "b")), ["a"], lambda v: 0, "c"),
        ["a"], lambda v: v, "d")
    # H(a)=1, H(b)=1: numeric fallback accepts with a warning
    verdict = check_conditional(weird, d)
    assert verdict.applicable
    assert verdict.warnings and verdict.constraints[0].method == "numeric"
    # break the symmetry: H(a)=1, H(b)=0
    skewed = E.make_distribution(
        [((0, 0, 0, 0), "1/2"), ((1, 0, 0, 1), "1/2")],
        [("a", 2), ("b", 1), ("c", 1), ("d", 2)])
    with pytest.raises(ConstraintNotApplicable):
        check_conditional(weird, skewed)


def test_check_conditional_requires_matching_names():
    d = independent_bits(("w", "x", "y", "z"))
    with pytest.raises(DimensionMismatch):
        check_conditional(catalog().conditional["cond1"], d)
