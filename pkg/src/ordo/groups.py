"""Group elements for the two supported families: free abelian Z^n and braid B_n.

Elements carry their group reference.  Lattice elements are exponent vectors;
braid words are freely reduced sequences of (generator index, +-1) letters.
Braid words are kept freely reduced but are not put into any canonical form:
word-problem questions are answered by the order oracles, not here.

The shared text grammar is whitespace-separated tokens ``x<k>`` (abelian) or
``s<k>`` (braid), each optionally suffixed ``^<signed integer>``; the empty
string is the identity.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import GroupMismatch, ParseError

FREE_ABELIAN = "free_abelian"
BRAID = "braid"

_TOKEN_RE = re.compile(r"^([xs])([1-9]\d*)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class GroupRef:
    """Which group we are in: FreeAbelian(rank n) or Braid(strands n)."""

    kind: str
    n: int

    def __post_init__(self) -> None:
        if self.kind == FREE_ABELIAN:
            if self.n < 1:
                raise ParseError(f"free abelian rank must be >= 1, got {self.n}")
        elif self.kind == BRAID:
            if self.n < 2:
                raise ParseError(f"braid strand count must be >= 2, got {self.n}")
        else:
            raise ParseError(f"unknown group kind: {self.kind!r}")

    @staticmethod
    def free_abelian(rank: int) -> "GroupRef":
        return GroupRef(FREE_ABELIAN, rank)

    @staticmethod
    def braid(strands: int) -> "GroupRef":
        return GroupRef(BRAID, strands)

    @property
    def is_abelian(self) -> bool:
        return self.kind == FREE_ABELIAN

    @property
    def rank(self) -> int:
        return self.n

    @property
    def strands(self) -> int:
        return self.n

    def identity(self) -> "Element":
        if self.is_abelian:
            return LatticeElement(self, (0,) * self.n)
        return BraidWord(self, ())

    def generators(self) -> list["Element"]:
        if self.is_abelian:
            return [LatticeElement(self, tuple(1 if j == i else 0 for j in range(self.n)))
                    for i in range(self.n)]
        return [BraidWord(self, ((i, 1),)) for i in range(1, self.n)]

    def to_json(self) -> dict:
        if self.is_abelian:
            return {"kind": FREE_ABELIAN, "rank": self.n}
        return {"kind": BRAID, "strands": self.n}

    @staticmethod
    def from_json(obj: dict) -> "GroupRef":
        try:
            kind = obj["kind"]
        except (TypeError, KeyError):
            raise ParseError("group object needs a 'kind' field") from None
        if kind == FREE_ABELIAN:
            return GroupRef.free_abelian(int(obj.get("rank", 0)))
        if kind == BRAID:
            return GroupRef.braid(int(obj.get("strands", 0)))
        raise ParseError(f"unknown group kind: {kind!r}")


@dataclass(frozen=True)
class LatticeElement:
    group: GroupRef
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.group.n:
            raise ParseError(
                f"coordinate length {len(self.coords)} does not match rank {self.group.n}")

    @property
    def is_identity(self) -> bool:
        return not any(self.coords)

    def __mul__(self, other: "LatticeElement") -> "LatticeElement":
        _same_group(self, other)
        return LatticeElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def inverse(self) -> "LatticeElement":
        return LatticeElement(self.group, tuple(-a for a in self.coords))

    def __pow__(self, k: int) -> "LatticeElement":
        return LatticeElement(self.group, tuple(k * a for a in self.coords))

    def render(self) -> str:
        return " ".join(
            f"x{i + 1}" if c == 1 else f"x{i + 1}^{c}"
            for i, c in enumerate(self.coords) if c != 0)

    def __str__(self) -> str:
        return self.render() or "1"


def free_reduce(letters: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Cancel adjacent (i, e)(i, -e) pairs, cascading."""
    out: list[tuple[int, int]] = []
    for letter in letters:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


@dataclass(frozen=True)
class BraidWord:
    group: GroupRef
    letters: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for i, e in self.letters:
            if not 1 <= i <= self.group.n - 1:
                raise ParseError(f"generator index {i} out of range for {self.group.n} strands")
            if e not in (1, -1):
                raise ParseError(f"letter exponent must be +-1, got {e}")
        if self.letters != free_reduce(self.letters):
            raise ParseError("braid word is not freely reduced")

    @staticmethod
    def from_letters(group: GroupRef, letters: Iterable[tuple[int, int]]) -> "BraidWord":
        return BraidWord(group, free_reduce(letters))

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        _same_group(self, other)
        return BraidWord(self.group, free_reduce(self.letters + other.letters))

    def inverse(self) -> "BraidWord":
        return BraidWord(self.group, tuple((i, -e) for i, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "BraidWord":
        if k == 0:
            return self.group.identity()
        base = self.letters if k > 0 else self.inverse().letters
        return BraidWord(self.group, free_reduce(base * abs(k)))

    def exponent_sum(self) -> int:
        return sum(e for _, e in self.letters)

    def render(self) -> str:
        parts: list[str] = []
        run_index, run_sum = None, 0
        for i, e in self.letters + ((0, 0),):
            if i == run_index:
                run_sum += e
                continue
            if run_index is not None:
                parts.append(f"s{run_index}" if run_sum == 1 else f"s{run_index}^{run_sum}")
            run_index, run_sum = i, e
        return " ".join(parts)

    def __str__(self) -> str:
        return self.render() or "1"


Element = Union[LatticeElement, BraidWord]


def _same_group(a: Element, b: Element) -> None:
    if a.group != b.group:
        raise GroupMismatch(f"elements of {a.group} and {b.group} cannot be combined")


def multiply(a: Element, b: Element) -> Element:
    return a * b


def inverse(a: Element) -> Element:
    return a.inverse()


def power(a: Element, k: int) -> Element:
    return a ** k


def parse_element(text: str, group: GroupRef) -> Element:
    """Parse the element grammar; empty string is the identity."""
    if not isinstance(text, str):
        raise ParseError(f"element expression must be a string, got {type(text).__name__}")
    want_prefix = "x" if group.is_abelian else "s"
    coords = [0] * group.n
    letters: list[tuple[int, int]] = []
    for token in text.split():
        match = _TOKEN_RE.match(token)
        if not match:
            raise ParseError(f"bad token {token!r}")
        prefix, index_text, exp_text = match.groups()
        if prefix != want_prefix:
            raise ParseError(f"token {token!r} does not belong to {group.kind}")
        index = int(index_text)
        exponent = int(exp_text) if exp_text is not None else 1
        if group.is_abelian:
            if index > group.n:
                raise ParseError(f"generator x{index} out of range for rank {group.n}")
            coords[index - 1] += exponent
        else:
            if index > group.n - 1:
                raise ParseError(f"generator s{index} out of range for {group.n} strands")
            step = 1 if exponent > 0 else -1
            letters.extend((index, step) for _ in range(abs(exponent)))
    if group.is_abelian:
        return LatticeElement(group, tuple(coords))
    return BraidWord.from_letters(group, letters)


def render_element(g: Element) -> str:
    return g.render()


def half_twist(n: int) -> BraidWord:
    """The positive half twist (s1..s_{n-1})(s1..s_{n-2})...(s1 s2)(s1)."""
    if n < 2:
        raise ParseError(f"half twist needs at least 2 strands, got {n}")
    group = GroupRef.braid(n)
    letters = [(i, 1) for length in range(n - 1, 0, -1) for i in range(1, length + 1)]
    return BraidWord(group, tuple(letters))


def full_twist(n: int) -> BraidWord:
    """Square of the half twist; generates the center of the braid group."""
    delta = half_twist(n)
    return delta * delta


def random_element(group: GroupRef, rng: random.Random, radius: int) -> Element:
    """Uniform coordinates in [-radius, radius]^n, or a random word of length <= radius."""
    if group.is_abelian:
        return LatticeElement(group, tuple(rng.randint(-radius, radius) for _ in range(group.n)))
    length = rng.randint(0, radius)
    letters = [(rng.randint(1, group.n - 1), rng.choice((1, -1))) for _ in range(length)]
    return BraidWord.from_letters(group, letters)


def coordinate_ball(group: GroupRef, radius: int) -> list[LatticeElement]:
    """All lattice points with max-norm <= radius, in graded lexicographic order."""
    import itertools

    points = itertools.product(range(-radius, radius + 1), repeat=group.n)
    ordered = sorted(points, key=lambda c: (max(map(abs, c), default=0), c))
    return [LatticeElement(group, c) for c in ordered]


def braid_words_up_to(group: GroupRef, length: int) -> list[BraidWord]:
    """All freely reduced words of length <= length, graded then lexicographic.

    Distinct words may represent equal braids; dedup against an order oracle
    where element identity matters.
    """
    alphabet = [(i, e) for i in range(1, group.n) for e in (1, -1)]
    out: list[BraidWord] = [group.identity()]
    frontier: list[tuple[tuple[int, int], ...]] = [()]
    for _ in range(length):
        next_frontier = []
        for word in frontier:
            for letter in alphabet:
                if word and word[-1][0] == letter[0] and word[-1][1] == -letter[1]:
                    continue
                next_frontier.append(word + (letter,))
        frontier = sorted(next_frontier)
        out.extend(BraidWord(group, w) for w in frontier)
    return out
