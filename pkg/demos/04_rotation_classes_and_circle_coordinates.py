#!/usr/bin/env python3
"""Rotation classes, realizing prescribed translation data, circle coordinates.

The translation numbers of a basis, reduced mod 1, classify anchored
orderings up to (semi-)conjugacy of their realizations.  Every tuple pairing
to 1 with the anchor is realized by an explicit flag ordering, and the
rank-2 picture is a doubled circle.
"""

from fractions import Fraction

from ordo import (
    FlagOrdering,
    GroupRef,
    RealConstant,
    construct_from_translations,
    is_realizable,
    naturality_check,
    parse_element,
    rotation_class,
    sikora_coordinate,
    slope_of,
    stable_exact,
    translation_values,
)

Z2 = GroupRef.free_abelian(2)
Z3 = GroupRef.free_abelian(3)


def el(text, group=Z2):
    return parse_element(text, group)


print("=== rotation class of the sqrt2 flag ===")
flag = FlagOrdering.create([[RealConstant.rational(1), RealConstant.sqrt(2)]])
got = rotation_class(flag, el("x1"))
for basis_el, component in zip(got.basis, got.components):
    print(f"  component at {basis_el}: {component}")

print()
print("=== the translation-value lift marks non-cofinal anchors ===")
lex = FlagOrdering.lex(2)
print(f"  lift at x1: {[str(c) for c in translation_values(lex, el('x1')).components]}")
print(f"  lift at x2: infinity = {translation_values(lex, el('x2')).is_infinity}")

print()
print("=== realizing prescribed translation data ===")
values = [RealConstant.rational(Fraction(1, 3)), RealConstant.rational(Fraction(1, 3))]
x = el("x1^2 x2")
print(f"  data (1/3, 1/3) with anchor (2,1): realizable = {is_realizable(values, x)}")
built = construct_from_translations(values, x)
print(f"  read-back stable(x1) = {stable_exact(built, x, el('x1'))}")
print(f"  read-back stable(anchor) = {stable_exact(built, x, x)}")

irr = [RealConstant.rational(1), RealConstant.sqrt(2)]
built2 = construct_from_translations(irr, el("x1"))
print(f"  data (1, sqrt2) anchored at x1 builds the flag with levels "
      f"{[[str(c) for c in level] for level in built2.levels]}")

print()
print("=== naturality under restriction ===")
report = naturality_check(flag, el("x1"), [el("x1 x2")])
print(f"  diagonal sublattice of the sqrt2 flag: passed = {report.passed}")
print(f"  pulled back component: {report.pulled_back[0]}  (= 1 + sqrt2 mod 1)")

print()
print("=== doubled-circle coordinates on LO(Z^2) ===")
for name, cone in [
    ("lex", lex),
    ("(1, sqrt2) flag", flag),
    ("direction (2,-3)", FlagOrdering.from_rational_rows([[2, -3], [0, 1]])),
    ("direction (0,1)", FlagOrdering.from_rational_rows([[0, 1], [1, 0]])),
]:
    point = sikora_coordinate(cone)
    slope = slope_of(point)
    slope_text = "infinity" if slope is None else str(slope)
    side = f", side {'+' if point.side and point.side > 0 else '-'}" \
        if point.kind == "rational" else ""
    print(f"  {name:>18}: {point.kind}{side}, slope {slope_text}")
print("  (the slope always matches the translation value of x2, infinity included)")
