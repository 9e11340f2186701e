"""Line realizations, sampled circle actions, the Euler identity, equivalence."""

from fractions import Fraction

import pytest

from ordo.errors import MissingOrbitPoint, UnsupportedInput
from ordo.exactreal import RealConstant
from ordo.groups import GroupRef, full_twist, parse_element
from ordo.orderings import DehornoyOrdering, FlagOrdering, act, compare
from ordo.dynamics import (
    ball_enumeration,
    circle_action_for_samples,
    circle_action_from_ball,
    dynamically_equivalent,
    euler_cocycle_survey,
    euler_identity_check,
    partial_action_check,
    realize,
    unit_translation_check,
)

Z1 = GroupRef.free_abelian(1)
Z2 = GroupRef.free_abelian(2)
B3 = GroupRef.braid(3)
LEX1 = FlagOrdering.lex(1)
LEX2 = FlagOrdering.lex(2)
SQRT2_FLAG = FlagOrdering.create([[RealConstant.rational(1), RealConstant.sqrt(2)]])
DEHORNOY3 = DehornoyOrdering.create(3)


def el(text, group=Z2):
    return parse_element(text, group)


def z1(text):
    return parse_element(text, Z1)


def test_realize_hand_example():
    table = realize(LEX1, [Z1.identity(), z1("x1"), z1("x1^-1"), z1("x1^2")])
    assert table.values == (Fraction(0), Fraction(1), Fraction(-1), Fraction(2))


def test_realize_midpoint_rule():
    table = realize(LEX1, [Z1.identity(), z1("x1"), z1("x1^-1"), z1("x1^3"), z1("x1^2")])
    assert table.values == (Fraction(0), Fraction(1), Fraction(-1), Fraction(2),
                            Fraction(3, 2))


def test_realize_single_element():
    table = realize(LEX2, [Z2.identity()])
    assert table.values == (Fraction(0),)


def test_realize_rejects_duplicates():
    with pytest.raises(UnsupportedInput):
        realize(LEX1, [Z1.identity(), z1("x1"), z1("x1")])
    # Duplicate braids hiding behind different words are caught too.
    with pytest.raises(UnsupportedInput):
        realize(DEHORNOY3, [B3.identity(), el("s1 s2 s1", B3), el("s2 s1 s2", B3)])


def test_realize_requires_identity_first():
    with pytest.raises(UnsupportedInput):
        realize(LEX1, [z1("x1")])


def test_realize_is_order_embedding():
    for cone, radius in ((LEX2, 3), (SQRT2_FLAG, 3), (DEHORNOY3, 3)):
        enumeration = ball_enumeration(cone, radius)
        table = realize(cone, enumeration)
        pairs = sorted(zip(table.values, table.elements))
        for (t0, g0), (t1, g1) in zip(pairs, pairs[1:]):
            assert t0 < t1
            assert compare(cone, g0, g1) < 0


def test_realize_prefix_stability():
    enumeration = ball_enumeration(SQRT2_FLAG, 3)
    full = realize(SQRT2_FLAG, enumeration)
    for cut in (1, 5, len(enumeration) // 2, len(enumeration) - 1):
        prefix = realize(SQRT2_FLAG, enumeration[:cut])
        assert prefix.values == full.values[:cut]


def test_lookup_by_group_element():
    table = realize(DEHORNOY3, ball_enumeration(DEHORNOY3, 3))
    # s1 s2 s1 and s2 s1 s2 are the same braid; lookup must find the same
    # station whichever word names it.
    value = table.lookup(el("s1 s2 s1", B3))
    assert value is not None
    assert table.lookup(el("s2 s1 s2", B3)) == value


def test_partial_action_hand_example():
    table = realize(LEX1, [Z1.identity(), z1("x1"), z1("x1^-1"), z1("x1^2")])
    report = partial_action_check(table, z1("x1"))
    assert report.passed
    assert report.checked == 3  # images of 1, x, x^-1 are enumerated


def test_partial_action_identity():
    table = realize(LEX1, [Z1.identity(), z1("x1")])
    report = partial_action_check(table, Z1.identity())
    assert report.passed
    assert report.checked == 2


def test_partial_action_on_ball():
    table = realize(LEX2, ball_enumeration(LEX2, 2))
    for g in (el("x2"), el("x1"), el("x1^-1 x2")):
        assert partial_action_check(table, g).passed


def test_ball_enumeration_dedupes_braids():
    words = ball_enumeration(DEHORNOY3, 3)
    # s1 s2 s1 and s2 s1 s2 are the same braid: only one survives.
    reps = [w for w in words
            if compare(DEHORNOY3, w, el("s1 s2 s1", B3)) == 0]
    assert len(reps) == 1


def test_circle_action_lex():
    action = circle_action_from_ball(LEX2, el("x1"), 2)
    # t'((k, j)) = k + theta((0, j)) for j >= 0.
    for k in (-2, 0, 1):
        for j in (0, 1, 2):
            g = el(f"x1^{k} x2^{j}")
            assert action.t_prime(g) == k + action.theta(el(f"x2^{j}"))


def test_circle_action_unit_translation():
    for cone, x, radius in ((LEX2, el("x1"), 2),
                            (SQRT2_FLAG, el("x1"), 2),
                            (DEHORNOY3, full_twist(3), 3)):
        action = circle_action_from_ball(cone, x, radius)
        report = unit_translation_check(action)
        assert report.passed
        assert report.checked == len(action.stored)


def test_circle_action_anchor_station():
    action = circle_action_from_ball(LEX2, el("x1"), 2)
    assert action.t_prime(el("x1")) == 1
    assert action.t_prime(Z2.identity()) == 0


def test_circle_action_requires_central_anchor():
    with pytest.raises(UnsupportedInput):
        circle_action_from_ball(DEHORNOY3, el("s1", B3), 2)


def test_circle_action_requires_cofinal_anchor():
    with pytest.raises(UnsupportedInput):
        circle_action_from_ball(LEX2, el("x2"), 2)


def test_theta_missing_point():
    action = circle_action_for_samples(LEX2, el("x1"), [el("x2")])
    with pytest.raises(MissingOrbitPoint):
        action.theta(el("x2^9"))


def test_euler_identity_anchor_squared():
    action = circle_action_from_ball(LEX2, el("x1"), 2)
    report = euler_identity_check(action, el("x1"), el("x1"))
    assert report.passed
    assert report.euler_cocycle == 0
    assert report.coboundary == 0


def test_euler_identity_hand_example():
    # f=(0,1), g=(0,-1): floors 0, -1, 0, so the coboundary is -1 and the
    # lift composition must give +1.
    action = circle_action_from_ball(LEX2, el("x1"), 2)
    report = euler_identity_check(action, el("x2"), el("x2^-1"))
    assert report.passed
    assert report.coboundary == -1
    assert report.euler_cocycle == 1


def test_euler_survey_three_families():
    for cone, x in ((LEX2, el("x1")), (SQRT2_FLAG, el("x1")),
                    (DEHORNOY3, full_twist(3))):
        survey = euler_cocycle_survey(cone, x, count=100, seed=5, radius=2)
        assert survey.all_passed, survey.failures[:3]


def test_equivalence_rescaled_flags():
    a = FlagOrdering.create([[RealConstant.rational(1), RealConstant.sqrt(2)]])
    b = FlagOrdering.create([[RealConstant.rational(2), RealConstant.sqrt(2, 2)]])
    verdict = dynamically_equivalent(a, b, el("x1"), mode="dynamical")
    assert verdict.outcome == "Equivalent"


def test_equivalence_distinguishes_sqrt2_sqrt3():
    a = FlagOrdering.create([[RealConstant.rational(1), RealConstant.sqrt(2)]])
    b = FlagOrdering.create([[RealConstant.rational(1), RealConstant.sqrt(3)]])
    verdict = dynamically_equivalent(a, b, el("x1"), mode="dynamical")
    assert verdict.outcome == "NotEquivalent"


def test_equivalence_lex_not_dense():
    verdict = dynamically_equivalent(LEX2, LEX2, el("x1"), mode="dynamical")
    assert verdict.outcome == "Unknown"
    assert "not dense" in verdict.reason


def test_equivalence_semi_mode_allows_discrete():
    verdict = dynamically_equivalent(LEX2, LEX2, el("x1"), mode="semi-dynamical")
    assert verdict.outcome == "Equivalent"


def test_equivalence_conjugate_braid_orderings():
    moved = act(DEHORNOY3, el("s1 s2^-1", B3))
    verdict = dynamically_equivalent(DEHORNOY3, moved, full_twist(3),
                                     mode="semi-dynamical", approx_order=60)
    assert verdict.outcome == "Equivalent"


def test_equivalence_noncentral_anchor_unknown():
    verdict = dynamically_equivalent(DEHORNOY3, DEHORNOY3, el("s1", B3),
                                     mode="semi-dynamical")
    assert verdict.outcome == "Unknown"
    assert "central" in verdict.reason


def test_conjugate_flag_orderings_equivalent():
    # The cone action is trivial on abelian groups, so conjugates compare equal.
    moved = act(SQRT2_FLAG, el("x1 x2"))
    verdict = dynamically_equivalent(SQRT2_FLAG, moved, el("x1"), mode="dynamical")
    assert verdict.outcome == "Equivalent"
