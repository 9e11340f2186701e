#!/usr/bin/env python3
"""The Dehornoy ordering of braid groups, decided by handle reduction.

A braid is order-positive when some representative word uses its lowest
generator index only positively; handle reduction rewrites any word into
such a form (or its mirror, or the empty word).
"""

from ordo import (
    DehornoyOrdering,
    GroupRef,
    cone_sign,
    compare,
    full_twist,
    handle_reduce,
    is_cofinal,
    is_right_invariant,
    parse_element,
)
from ordo.orderings import is_central_braid

B3 = GroupRef.braid(3)
D = DehornoyOrdering.create(3)


def braid(text):
    return parse_element(text, B3)


print("=== handle reduction in action ===")
word = braid("s1 s2 s1^-1")
reduced = handle_reduce(word.letters, 3)
print(f"  s1 s2 s1^-1 reduces to {' '.join(f's{i}' if e > 0 else f's{i}^-1' for i, e in reduced)}")
print("  (the braid relation in disguise: s1 s2 s1^-1 = s2^-1 s1 s2)")

print()
print("=== the order oracle ===")
for text in ["s1 s2^-1", "s2 s1^-1", "s1 s2 s1 s2^-1 s1^-1 s2^-1"]:
    w = braid(text)
    print(f"  sign({text:>24}) = {cone_sign(D, w):+d}" if cone_sign(D, w) else
          f"  sign({text:>24}) =  0   (a trivial braid wearing a nontrivial word)")

print()
print("=== the full twist generates the center ===")
twist = full_twist(3)
print(f"  full twist = {twist.render()}")
print(f"  central: {is_central_braid(D, twist)}")
for gen_text in ["s1", "s2"]:
    g = braid(gen_text)
    commutator = g.inverse() * twist.inverse() * g * twist
    print(f"  [{gen_text}, twist] trivial: {cone_sign(D, commutator) == 0}")

print()
print("=== universal cofinality of the twist ===")
print(f"  is_cofinal(D, twist) = {is_cofinal(D, twist).value}")
print(f"  right-invariance under the twist: "
      f"{is_right_invariant(D, twist).outcome.value}")
verdict = is_right_invariant(D, braid("s1"), cap=4)
print(f"  right-invariance under s1: {verdict.outcome.value}"
      + (f", witness {verdict.witness.render()!r}" if verdict.witness else ""))

print()
print("=== comparisons sort braids ===")
sample = [braid(t) for t in ["", "s1", "s2", "s1 s2", "s2 s1", "s1^-1", "s1 s2 s1"]]
ranked = sorted(sample, key=lambda w: sum(
    1 for v in sample if compare(D, v, w) < 0))
print("  ascending:", "  ".join(w.render() or "1" for w in ranked))
