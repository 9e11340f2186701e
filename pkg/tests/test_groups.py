"""Element grammar, group laws, and braid constants."""

import random

import pytest

from ordo.errors import GroupMismatch, ParseError
from ordo.groups import (
    BraidWord,
    GroupRef,
    LatticeElement,
    braid_words_up_to,
    coordinate_ball,
    full_twist,
    half_twist,
    parse_element,
    random_element,
)

Z2 = GroupRef.free_abelian(2)
B3 = GroupRef.braid(3)


def test_parse_abelian():
    assert parse_element("x1^2 x2^-1", Z2) == LatticeElement(Z2, (2, -1))
    assert parse_element("", Z2) == Z2.identity()
    assert parse_element("x1 x1 x2^0", Z2) == LatticeElement(Z2, (2, 0))


def test_parse_braid_free_reduction():
    assert parse_element("s1 s1^-1 s2", B3) == BraidWord(B3, ((2, 1),))
    assert parse_element("s1^3", B3).letters == ((1, 1), (1, 1), (1, 1))
    assert parse_element("", B3) == B3.identity()


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_element("x3", Z2)
    with pytest.raises(ParseError):
        parse_element("s1", Z2)
    with pytest.raises(ParseError):
        parse_element("s2", GroupRef.braid(2))
    with pytest.raises(ParseError):
        parse_element("x1^1.5", Z2)
    with pytest.raises(ParseError):
        parse_element("y1", Z2)


def test_power_abelian():
    assert parse_element("x1 x2^-2", Z2) ** 3 == LatticeElement(Z2, (3, -6))


def test_braid_multiply_inverse():
    s1 = parse_element("s1", B3)
    s2 = parse_element("s2", B3)
    assert s1 * s1.inverse() == B3.identity()
    assert (s1 * s2).inverse() == parse_element("s2^-1 s1^-1", B3)


def test_mixed_groups_rejected():
    with pytest.raises(GroupMismatch):
        parse_element("x1", Z2) * parse_element("x1", GroupRef.free_abelian(3))


def test_half_and_full_twist():
    assert full_twist(2) == parse_element("s1^2", GroupRef.braid(2))
    assert half_twist(3) == parse_element("s1 s2 s1", B3)
    assert full_twist(3) == parse_element("s1 s2 s1", B3) ** 2
    for n in range(2, 6):
        assert len(full_twist(n)) == n * (n - 1)


def test_render_parse_round_trip():
    rng = random.Random(5)
    for _ in range(10_000):
        group = rng.choice([Z2, GroupRef.free_abelian(3), B3, GroupRef.braid(4)])
        g = random_element(group, rng, 6)
        assert parse_element(g.render(), group) == g


def test_group_laws_sampled():
    rng = random.Random(9)
    for _ in range(10_000):
        group = rng.choice([Z2, B3])
        g = random_element(group, rng, 5)
        h = random_element(group, rng, 5)
        assert (g * h).inverse() == h.inverse() * g.inverse()
        assert g * g.inverse() == group.identity()


def test_coordinate_ball():
    ball = coordinate_ball(Z2, 1)
    assert len(ball) == 9
    assert ball[0] == Z2.identity()
    assert ball[0].coords == (0, 0)
    norms = [max(map(abs, b.coords)) for b in ball]
    assert norms == sorted(norms)


def test_braid_words_up_to():
    words = braid_words_up_to(B3, 2)
    assert words[0] == B3.identity()
    # 4 letters, then 4*3 reduced two-letter words.
    assert len(words) == 1 + 4 + 12
    assert all(w.letters == tuple(w.letters) for w in words)


def test_exponent_sum():
    assert parse_element("s1^2 s2^-1", B3).exponent_sum() == 1
    assert full_twist(3).exponent_sum() == 6
