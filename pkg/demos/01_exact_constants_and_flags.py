#!/usr/bin/env python3
"""Tour of the exact constant field and flag orderings of Z^n.

Flag orderings compare elements by exact pairings against a sequence of
constant vectors; everything here is decided without floating point.
"""

from fractions import Fraction

from ordo import (
    FlagOrdering,
    GroupRef,
    RealConstant,
    axioms_check,
    cone_sign,
    is_cofinal,
    is_dense,
    parse_element,
    q_rank,
)

print("=== exact constants ===")
a = RealConstant.from_terms({1: Fraction(3, 2), 2: -1})  # 3/2 - sqrt(2)
print(f"a = {a}, sign {a.sign()}, floor {a.floor()}")
b = RealConstant.sqrt(8)  # normalizes to 2 sqrt(2)
print(f"sqrt(8) stored canonically as {b}")
print(f"7 - 5 sqrt(2) has sign {RealConstant.from_terms({1: 7, 2: -5}).sign()}"
      "  (49 < 50, decided by interval refinement)")
print(f"Q-rank of [1, sqrt2, 1+sqrt2] = "
      f"{q_rank([RealConstant.rational(1), RealConstant.sqrt(2), RealConstant.from_terms({1: 1, 2: 1})])}")

print()
print("=== the lexicographic flag on Z^2 ===")
Z2 = GroupRef.free_abelian(2)
lex = FlagOrdering.lex(2)
for text in ["x2", "x1 x2^-5", "x1^-1 x2^9", ""]:
    g = parse_element(text, Z2)
    print(f"  sign({str(g):>12}) = {cone_sign(lex, g):+d}" if text else
          f"  sign({'identity':>12}) = {cone_sign(lex, g)}")

print()
print("=== an irrational flag: first level (1, sqrt2) ===")
flag = FlagOrdering.create([[RealConstant.rational(1), RealConstant.sqrt(2)]])
g = parse_element("x1^-4 x2^3", Z2)
print(f"  sign of (-4, 3): {cone_sign(flag, g):+d}   (3 sqrt2 > 4)")
print(f"  axioms check: passed={axioms_check(flag, 500, seed=0).passed}")

print()
print("=== density is decided exactly for flags ===")
for name, cone in [("lex Z^2", lex), ("(1, sqrt2) flag", flag)]:
    verdict = is_dense(cone)
    extra = (f", minimal positive {verdict.minimal_positive}"
             if verdict.minimal_positive else "")
    print(f"  {name}: {verdict.outcome.value}{extra}")

print()
print("=== cofinality of anchors ===")
x1 = parse_element("x1", Z2)
x2 = parse_element("x2", Z2)
print(f"  x1 cofinal for lex Z^2: {is_cofinal(lex, x1).value}")
print(f"  x2 cofinal for lex Z^2: {is_cofinal(lex, x2).value} "
      "(x1 exceeds every power of x2)")

print()
print("=== restriction to a sublattice ===")
restricted = flag.restrict([parse_element("x1^2 x2^-1", Z2)])
gen = parse_element("x1", GroupRef.free_abelian(1))
print(f"  (1, sqrt2) restricted to <(2, -1)>: sign of the generator = "
      f"{cone_sign(restricted, gen):+d}   (2 - sqrt2 > 0)")
