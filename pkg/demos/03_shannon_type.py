"""Deciding Shannon-typeness with exact, re-checkable certificates.

An inequality is Shannon-type when it is a non-negative combination of the
elemental inequalities. The decision is an exact rational LP over the
polymatroid cone; either way we get a certificate that re-verifies by pure
arithmetic: dual weights whose combination *equals* the expression, or a
rational polymatroid on which the expression is negative.
"""

import json

import entroscope as E
from entroscope.shannon import elemental_inequalities, is_shannon_type, verify_verdict

order = ("a", "b", "c", "d")

print(f"elemental inequalities at n=4: {len(elemental_inequalities(4))}")

# every elemental inequality certifies itself
e = elemental_inequalities(4)[10]
v = is_shannon_type(e)
print(f"\n{E.print_canonical(e)}")
print(f"  -> {v.decision}, dual weights {dict(v.dual_weights)}")

# a hand-made combination
combo = E.parse("2*I(a;b|c) + 1/3*H(d|a,b,c)", order)
v = is_shannon_type(combo)
print(f"\n{E.print_canonical(combo)}")
print(f"  -> {v.decision}")
for text, w in v.dual_weights.items():
    print(f"     {w} * [{text}]")

# the first non-Shannon-type inequality
zy = E.zy98_expression()
v = is_shannon_type(zy)
print(f"\nzy98 slack: {E.print_canonical(zy)}")
print(f"  -> {v.decision}")
print("  witness polymatroid (a rational point of the Shannon cone on which")
print("  the expression goes negative):")
print("   ", {k: str(val) for k, val in v.witness.items()})
print(f"  objective value: {v.witness_value}")
print(f"  certificate re-verifies exactly: {verify_verdict(v)}")

# Ingleton, read as a >= 0 claim, is not Shannon-type either
ing = E.catalog().unconditional["ingleton"]
v = is_shannon_type(ing)
print(f"\ningleton slack -> {v.decision} (objective {v.witness_value})")

print("\ncertificate JSON (what the CLI prints):")
print(json.dumps(is_shannon_type(zy).to_json(), indent=2, sort_keys=True)[:400], "...")
