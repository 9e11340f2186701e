#!/usr/bin/env python3
"""Convexity certificates, word obstructions, and actions on line and circle."""

from ordo import (
    DehornoyOrdering,
    ExponentMatrix,
    FlagOrdering,
    GroupRef,
    RealConstant,
    ball_enumeration,
    brute_convex,
    check_convex,
    circle_action_from_ball,
    dynamically_equivalent,
    euler_cocycle_survey,
    full_twist,
    parse_element,
    partial_action_check,
    realize,
    unit_translation_check,
    word_constraints,
)

Z2 = GroupRef.free_abelian(2)


def el(text, group=Z2):
    return parse_element(text, group)


print("=== convexity certificates on lex Z^2 ===")
lex = FlagOrdering.lex(2)
for rows in ["0 1", "1 0", "0 2"]:
    matrix = ExponentMatrix.parse(rows)
    verdict = check_convex(lex, el("x1"), matrix)
    oracle = brute_convex(lex, matrix, 5)
    tag = "Convex" if verdict.convex else f"NotConvex({verdict.failed_condition})"
    oracle_tag = "no violation" if not oracle.violation else \
        f"violation at {oracle.witness.render()}"
    print(f"  subgroup rows [{rows}]: {tag:>14}; ball oracle: {oracle_tag}")

print()
print("=== a word obstruction: no ordering makes <w> convex ===")
print("  one element written two ways: w = x y^2 = x^3 y^-1, with stable(x) = 1")
verdict = word_constraints(["x^1 y^2", "x^3 y^-1"], pinned={"x": 1})
print(f"  outcome: {'Feasible' if verdict.feasible else 'Infeasible'}")
for c in verdict.conflict:
    lo, hi = c.interval()
    print(f"    from {c.source!r}: {c.describe()}  =>  t in [{lo}, {hi}]")

print()
print("=== realizing an ordering on the line ===")
table = realize(lex, ball_enumeration(lex, 2))
stations = sorted(zip(table.values, table.elements))
line = "  ".join(f"{g.render() or '1'}@{t}" for t, g in stations[:7])
print(f"  first stations: {line} ...")
action_report = partial_action_check(table, el("x2"))
print(f"  left translation by x2 is increasing on {action_report.checked} stations: "
      f"{action_report.passed}")

print()
print("=== the circle action of a central cofinal anchor ===")
flag = FlagOrdering.create([[RealConstant.rational(1), RealConstant.sqrt(2)]])
action = circle_action_from_ball(flag, el("x1"), 2)
print(f"  t'(x1) = {action.t_prime(el('x1'))}, t'(identity) = "
      f"{action.t_prime(Z2.identity())}")
print(f"  unit translation holds on the sample: "
      f"{unit_translation_check(action).passed}")

print()
print("=== the Euler cocycle identity, surveyed ===")
D = DehornoyOrdering.create(3)
for name, cone, x in [("lex Z^2", lex, el("x1")),
                      ("sqrt2 flag", flag, el("x1")),
                      ("Dehornoy B_3", D, full_twist(3))]:
    survey = euler_cocycle_survey(cone, x, count=200, seed=0, radius=2)
    print(f"  {name:>12}: {survey.passed}/{survey.total} pairs satisfy "
          "lift cocycle = -(floor coboundary)")

print()
print("=== equivalence verdicts ===")
doubled = FlagOrdering.create([[RealConstant.rational(2), RealConstant.sqrt(2, 2)]])
sqrt3 = FlagOrdering.create([[RealConstant.rational(1), RealConstant.sqrt(3)]])
for name, a, b, mode in [
    ("sqrt2 vs rescaled sqrt2", flag, doubled, "dynamical"),
    ("sqrt2 vs sqrt3", flag, sqrt3, "dynamical"),
    ("lex vs lex (dynamical)", lex, lex, "dynamical"),
    ("lex vs lex (semi)", lex, lex, "semi-dynamical"),
]:
    verdict = dynamically_equivalent(a, b, el("x1"), mode=mode)
    reason = f" ({verdict.reason})" if verdict.reason else ""
    print(f"  {name:>24}: {verdict.outcome}{reason}")
