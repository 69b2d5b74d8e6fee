"""Why the conditional inequalities cannot be bought unconditionally.

The two-term conditional inequality says: if I(a;b|c) = I(a;b) = 0 then
I(c;d) <= I(c;d|a) + I(c;d|b). Could it be the shadow of an unconditional
inequality I(c;d) <= I(c;d|a) + I(c;d|b) + l1*I(a;b) + l2*I(a;b|c)?

On the quadruple the body terms vanish, I(c;d) = (q-1)/q, and the relaxed
constraint terms are at most log2(q)/q each, so any fixed multipliers lose
once q is large: the extension gap (q-1)/q - (l1+l2) log2(q)/q turns
positive. The same mechanism kills extensions of the three-term variant.
"""

import entroscope as E

for lams in ((1, 1), (2, 3), (10, 10)):
    q0 = E.minimal_refuting_prime(*lams, "ext1")
    print(f"multipliers {lams}: first prime refuting the ext1 extension: q = {q0}")
    for q in (5, 7, q0):
        gap = E.extension_gap(q, *lams, "ext1")
        verdict = "refuted" if gap > 0 else "not yet"
        print(f"    gap at q={q:>4}: {gap:+.6f}  ({verdict})")

print()
print("three-term variant (ext3), multipliers (1,1):")
q0 = E.minimal_refuting_prime(1, 1, "ext3")
print(f"  first refuting prime: {q0}")
for q in (7, 11, q0):
    print(f"    gap at q={q:>4}: {E.extension_gap(q, 1, 1, 'ext3'):+.6f}")

print()
print("with zero multipliers the bare body fails at every prime:")
for q in (2, 3, 5):
    print(f"    q={q}: gap {E.extension_gap(q, 0, 0, 'ext1'):+.6f}")

print()
print("no finite multipliers work, so the conditional inequalities are not")
print("shadows of unconditional ones: they are essentially conditional.")
