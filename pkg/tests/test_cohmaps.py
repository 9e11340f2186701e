"""Rotation classes, translation-value lifts, construction, circle coordinates."""

import random
from fractions import Fraction

import pytest

from ordo.errors import NotRealizable, UnsupportedInput
from ordo.exactreal import ONE, RealConstant, combine, mod_one
from ordo.groups import GroupRef, LatticeElement, full_twist, parse_element
from ordo.orderings import Decision, DehornoyOrdering, FlagOrdering, act
from ordo.quasimorph import StableValue, stable_exact
from ordo.cohmaps import (
    construct_from_translations,
    is_realizable,
    naturality_check,
    rotation_class,
    sikora_coordinate,
    slope_of,
    translation_values,
)

Z2 = GroupRef.free_abelian(2)
Z3 = GroupRef.free_abelian(3)
B3 = GroupRef.braid(3)
LEX2 = FlagOrdering.lex(2)
SQRT2 = RealConstant.sqrt(2)
SQRT2_FLAG = FlagOrdering.create([[RealConstant.rational(1), SQRT2]])
DEHORNOY3 = DehornoyOrdering.create(3)


def el(text, group=Z2):
    return parse_element(text, group)


def rc(value):
    return RealConstant.rational(Fraction(value))


def test_rotation_class_lex():
    got = rotation_class(LEX2, el("x1"))
    assert got.components == (rc(0) * 0 + rc(0), rc(0))
    assert all(c.is_zero for c in got.components)


def test_rotation_class_sqrt2_flag():
    got = rotation_class(SQRT2_FLAG, el("x1"))
    assert got.components == (mod_one(ONE), combine(SQRT2, ONE, 1, -1))
    assert got.components[0].is_zero


def test_rotation_class_dehornoy_first_generator():
    # Oracle: power floors of s1^N are 0 for N > 0 (powers of one generator
    # never reach the full twist), so the stable value is exactly 0 and the
    # sharp window [0, 1/N] reduces mod 1 without straddling.
    got = rotation_class(DEHORNOY3, full_twist(3), approx_order=120)
    (component,) = got.components
    assert isinstance(component, StableValue)
    assert component.approx - component.radius == 0
    assert component.approx + component.radius == Fraction(1, 120)


def test_rotation_class_membership_guard():
    # The invariance search finds a definite witness against the anchor s1.
    from ordo.errors import NotRightInvariant

    with pytest.raises(NotRightInvariant):
        rotation_class(DEHORNOY3, el("s1", B3))


def test_rotation_class_conjugated_cone_unwraps_to_exact():
    moved = act(DEHORNOY3, el("s1 s2", B3))
    a = rotation_class(moved, full_twist(3), approx_order=60)
    b = rotation_class(DEHORNOY3, full_twist(3), approx_order=60)
    assert a.equals(b) != Decision.NO
    assert a.components[0].approx == b.components[0].approx


def test_translation_values_sqrt2():
    got = translation_values(SQRT2_FLAG, el("x1"), basis=[el("x2")])
    assert not got.is_infinity
    assert got.components == (SQRT2,)


def test_translation_values_noncofinal_is_infinity():
    got = translation_values(LEX2, el("x2"))
    assert got.is_infinity


def test_translation_values_anchor_itself():
    got = translation_values(LEX2, el("x1"), basis=[el("x1")])
    assert got.components == (ONE,)


def test_naturality_identity_sublattice():
    report = naturality_check(LEX2, el("x1"), [el("x1"), el("x2")])
    assert report.passed


def test_naturality_axis_sublattice():
    report = naturality_check(LEX2, el("x1"), [el("x2")])
    assert report.passed
    assert report.pulled_back[0].is_zero


def test_naturality_diagonal_sqrt2():
    report = naturality_check(SQRT2_FLAG, el("x1"), [el("x1 x2")])
    assert report.passed
    # 1 + sqrt2 mod 1 = sqrt2 - 1.
    assert report.pulled_back[0] == combine(SQRT2, ONE, 1, -1)


def test_naturality_random_flags():
    rng = random.Random(100)
    for _ in range(100):
        v1 = [RealConstant.from_terms({1: rng.randint(1, 5)}),
              RealConstant.from_terms({1: rng.randint(-4, 4), 2: rng.randint(-4, 4)})]
        flag = FlagOrdering.create(
            [v1, [RealConstant.rational(0), RealConstant.rational(1)]], check=False)
        if not flag.is_total():
            continue
        cols = [LatticeElement(Z2, (rng.randint(-3, 3), rng.randint(-3, 3)))]
        if not any(cols[0].coords):
            continue
        assert naturality_check(flag, el("x1"), cols).passed


def test_is_realizable():
    assert is_realizable([ONE, SQRT2], el("x1"))
    assert not is_realizable([RealConstant.rational(Fraction(1, 2)), rc(0)], el("x1"))
    assert is_realizable([rc(Fraction(1, 3)), rc(Fraction(1, 3))], el("x1^2 x2"))


def test_construct_from_translations_sqrt2():
    flag = construct_from_translations([ONE, SQRT2], el("x1"))
    assert stable_exact(flag, el("x1"), el("x2")) == SQRT2
    assert rotation_class(flag, el("x1")).components[1] == combine(SQRT2, ONE, 1, -1)


def test_construct_lex_from_rational_data():
    z3 = GroupRef.free_abelian(3)
    flag = construct_from_translations([ONE, rc(0), rc(0)], el("x1", z3))
    got = rotation_class(flag, el("x1", z3))
    assert all(c.is_zero for c in got.components)
    # Kernel of the pairing is ordered lexicographically: x2 dominates x3.
    assert flag.sign(el("x2 x3^-9", z3)) == 1


def test_construct_anchor_pairing_two_one():
    flag = construct_from_translations([rc(Fraction(1, 3)), rc(Fraction(1, 3))], el("x1^2 x2"))
    assert stable_exact(flag, el("x1^2 x2"), el("x1")) == rc(Fraction(1, 3))
    assert stable_exact(flag, el("x1^2 x2"), el("x1^2 x2")) == ONE


def test_construct_rejects_bad_pairing():
    with pytest.raises(NotRealizable):
        construct_from_translations([rc(Fraction(1, 2)), rc(0)], el("x1"))
    with pytest.raises(NotRealizable):
        construct_from_translations([rc(0), rc(0)], Z2.identity())


def test_construct_round_trip_random():
    rng = random.Random(101)
    for _ in range(100):
        group = rng.choice([Z2, Z3])
        n = group.rank
        coords = [0] * n
        coords[0] = rng.choice([1, 2, -1])
        for i in range(1, n):
            coords[i] = rng.randint(-2, 2)
        x = LatticeElement(group, tuple(coords))
        tail = [RealConstant.from_terms(
            {1: Fraction(rng.randint(-3, 3)), 2: Fraction(rng.randint(-2, 2)),
             3: Fraction(rng.randint(-2, 2))}) for _ in range(n - 1)]
        pairing_tail = sum((x.coords[i + 1] * t for i, t in enumerate(tail)),
                           RealConstant.rational(0))
        first = combine(ONE, pairing_tail, 1, -1) / x.coords[0]
        values = [first] + tail
        assert is_realizable(values, x)
        flag = construct_from_translations(values, x)
        got = rotation_class(flag, x, basis=group.generators())
        for want, have in zip(values, got.components):
            assert mod_one(want) == have
        for i, gen in enumerate(group.generators()):
            assert stable_exact(flag, x, gen) == values[i]


def test_construct_custom_tiebreak():
    z3 = GroupRef.free_abelian(3)
    reversed_lex = FlagOrdering.from_rational_rows([[0, 1], [1, 0]])
    flag = construct_from_translations([ONE, rc(0), rc(0)], el("x1", z3),
                                       tiebreak=reversed_lex)
    # Kernel basis (HNF) is (0,1,0), (0,0,1); reversed tiebreak puts x3 first.
    assert flag.sign(el("x3 x2^-9", z3)) == 1
    with pytest.raises(UnsupportedInput):
        construct_from_translations([ONE, rc(0), rc(0)], el("x1", z3),
                                    tiebreak=FlagOrdering.lex(1))


def test_sikora_lex():
    point = sikora_coordinate(LEX2)
    assert point.kind == "rational"
    assert point.direction == (1, 0)
    the_slope = slope_of(point)
    assert the_slope is not None and the_slope.is_zero
    assert translation_values(LEX2, el("x1"), basis=[el("x2")]).components[0].is_zero


def test_sikora_irrational():
    point = sikora_coordinate(SQRT2_FLAG)
    assert point.kind == "irrational"
    assert slope_of(point) == SQRT2


def test_sikora_negative_rational_direction():
    flag = FlagOrdering.from_rational_rows([[2, -3], [0, 1]])
    point = sikora_coordinate(flag)
    assert point.kind == "rational"
    assert point.direction == (2, -3)
    assert point.side == 1
    assert slope_of(point) == rc(Fraction(-3, 2))
    assert translation_values(flag, el("x1"), basis=[el("x2")]).components[0] == \
        rc(Fraction(-3, 2))


def test_sikora_side_distinguishes_orderings():
    up = FlagOrdering.from_rational_rows([[1, 0], [0, 1]])
    down = FlagOrdering.from_rational_rows([[1, 0], [0, -1]])
    assert sikora_coordinate(up).side != sikora_coordinate(down).side
    assert sikora_coordinate(up).direction == sikora_coordinate(down).direction


def test_sikora_infinity_direction():
    # Anchor not cofinal: translations are infinite and the slope is infinite.
    flag = FlagOrdering.from_rational_rows([[0, 1], [1, 0]])
    point = sikora_coordinate(flag)
    assert point.direction == (0, 1)
    assert slope_of(point) is None
    assert translation_values(flag, el("x1")).is_infinity


def test_sikora_scaled_direction_is_primitive():
    flag = FlagOrdering.from_rational_rows([[4, 6], [0, 1]])
    assert sikora_coordinate(flag).direction == (2, 3)


def test_rotation_class_components_stay_in_unit_interval():
    rng = random.Random(102)
    for _ in range(60):
        v2 = RealConstant.from_terms({1: Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
                                      2: rng.randint(-3, 3), 3: rng.randint(-3, 3)})
        flag = FlagOrdering.create(
            [[ONE, v2], [RealConstant.rational(0), ONE]], check=False)
        if not flag.is_total():
            continue
        for c in rotation_class(flag, el("x1")).components:
            assert c.sign() >= 0
            assert (ONE - c).sign() > 0
