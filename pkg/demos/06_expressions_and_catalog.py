"""The expression mini-language and the built-in inequality catalog.

Expressions parse into canonical linear functionals over subset entropies
with exact coefficients; printing is deterministic and round-trips. The
catalog holds the named inequalities under the frozen identifiers used by
the CLI, and conditional checking certifies constraints structurally.
"""

import entroscope as E
from entroscope.catalog import catalog, check_conditional

order = ("a", "b", "c", "d")

e = E.parse("2*I(c;d|a) + I(c;d|b) + I(a;b) + I(a;c|d) + I(a;d|c) - I(c;d)", order)
print("parsed zy98 slack, canonical form:")
print("  ", E.print_canonical(e))
print("round-trips:", E.parse(E.print_canonical(e), order) == e)
print("equals the catalog entry:", e == catalog().unconditional["zy98"])

print("\nexact coefficient arithmetic:")
f = E.parse("1/3*H(a) + 1/6*H(a) - 0.5*H(a)", order)
print("  1/3*H(a) + 1/6*H(a) - 0.5*H(a) ->", E.print_canonical(f))

print("\ncatalog families:", catalog().family_names)
print("matus-star(1) equals zy98:",
      catalog().matus_star(1) == catalog().unconditional["zy98"])

# conditional checking: structural certificates, never silent tolerances
quad = E.quadruple_distribution(3)
verdict = check_conditional(catalog().conditional["cond1"], quad)
print("\ncond1 on the quadruple at q=3:")
print("  applicable:", verdict.applicable)
for c in verdict.constraints:
    print(f"    {c.text}: satisfied={c.satisfied} ({c.method}), value {c.value:+.4f}")
print("  the I(a;b) = 0 constraint fails exactly, so the inequality says")
print("  nothing about this distribution - even though I(a;b) is only half a bit.")

# four independent bits satisfy cond1's constraints; the body must hold
import itertools
from fractions import Fraction

outcomes = [(t, Fraction(1, 16)) for t in itertools.product((0, 1), repeat=4)]
indep = E.make_distribution(outcomes, [(v, 2) for v in order])
verdict = check_conditional(catalog().conditional["cond1"], indep)
print("\ncond1 on four independent bits:")
print(f"  applicable: {verdict.applicable}, body value {verdict.body_value:+.2e}, "
      f"holds: {verdict.holds}")
