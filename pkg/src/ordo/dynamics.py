"""Actions on the line and circle read off an ordering.

The realization table assigns exact rationals to a finite enumeration
(identity first) by the inductive rule: a new element beyond the current
maximum gets max+1, below the minimum gets min-1, and otherwise the midpoint
of its immediate neighbours; the assignment order-embeds the enumerated
elements into Q and never revises earlier values.

For a central cofinal anchor x the floors split every element h as
x^{floor(h)} times a remainder in the floor-zero stratum, and

    t'(h) = floor(h) + theta(remainder(h))

with theta an order-embedding of the stratum into [0,1) realizes the group
on the line with x acting as translation by one; quotienting by that
translation samples a circle action.  The normalized lift of the circle map
of f moves 0 to t'(f) - floor(f), and composing lifts measures an integer
cocycle which must equal minus the quasimorphism coboundary: this is the
cochain-level form of "the rotation class is minus the Euler class".

Two orderings with the same central cofinal anchor get an equivalence
verdict by comparing rotation classes: equal classes mean conjugate circle
actions (semi-conjugate in general; conjugate on dense orderings).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import MissingOrbitPoint, UnsupportedInput
from .exactreal import format_rational
from .groups import Element, braid_words_up_to, coordinate_ball, random_element
from .orderings import (
    Cone,
    Decision,
    Density,
    cone_sign,
    compare,
    is_central_braid,
    is_cofinal,
    is_dense,
)
from .quasimorph import AnchorContext, power_floor
from .cohmaps import RotationClass, rotation_class, unwrap_central_conjugation


@dataclass(frozen=True)
class RealizationTable:
    """Exact rational stations for a finite enumeration, identity at 0."""

    cone: Cone
    elements: tuple[Element, ...]
    values: tuple[Fraction, ...]

    @cached_property
    def _sorted_order(self) -> tuple[int, ...]:
        # Indices sorted by station; the table is an order embedding, so this
        # is also the cone order of the elements.
        return tuple(sorted(range(len(self.elements)), key=lambda i: self.values[i]))

    def lookup(self, g: Element) -> Fraction | None:
        """Value of g if it is enumerated (order-based search, exact)."""
        order = self._sorted_order
        lo, hi = 0, len(order)
        while lo < hi:
            mid = (lo + hi) // 2
            c = compare(self.cone, self.elements[order[mid]], g)
            if c == 0:
                return self.values[order[mid]]
            if c < 0:
                lo = mid + 1
            else:
                hi = mid
        return None

    def to_json(self) -> dict:
        return {
            "elements": [g.render() for g in self.elements],
            "values": [format_rational(v) for v in self.values],
        }


def realize(cone: Cone, enumeration: Sequence[Element]) -> RealizationTable:
    """Run the inductive assignment over the enumeration.

    The enumeration must start with the identity and contain no repeated
    group elements (braid words are compared as braids, not as words).
    """
    if not enumeration:
        raise UnsupportedInput("enumeration must not be empty")
    first = enumeration[0]
    if cone_sign(cone, first) != 0:
        raise UnsupportedInput("enumeration must start with the identity")

    ordered: list[tuple[Element, Fraction]] = []  # kept sorted by the cone
    values: list[Fraction] = []
    for i, g in enumerate(enumeration):
        lo, hi = 0, len(ordered)
        while lo < hi:
            mid = (lo + hi) // 2
            c = compare(cone, ordered[mid][0], g)
            if c == 0:
                raise UnsupportedInput(
                    f"duplicate element at position {i}: {g.render()!r}")
            if c < 0:
                lo = mid + 1
            else:
                hi = mid
        if not ordered:
            t = Fraction(0)
        elif lo == 0:
            t = ordered[0][1] - 1
        elif lo == len(ordered):
            t = ordered[-1][1] + 1
        else:
            t = (ordered[lo - 1][1] + ordered[lo][1]) / 2
        ordered.insert(lo, (g, t))
        values.append(t)
    return RealizationTable(cone, tuple(enumeration), tuple(values))


def ball_enumeration(cone: Cone, radius: int) -> list[Element]:
    """Default enumeration: the radius ball in graded lexicographic order.

    Coordinate ball for abelian groups, word-length ball for braid groups;
    braid words are deduplicated through the order oracle, keeping the first
    (shortest, lexicographically earliest) representative of each element.
    """
    if cone.group.is_abelian:
        return list(coordinate_ball(cone.group, radius))
    seen: list[Element] = []  # sorted by the cone
    out: list[Element] = []
    for w in braid_words_up_to(cone.group, radius):
        lo, hi = 0, len(seen)
        duplicate = False
        while lo < hi:
            mid = (lo + hi) // 2
            c = compare(cone, seen[mid], w)
            if c == 0:
                duplicate = True
                break
            if c < 0:
                lo = mid + 1
            else:
                hi = mid
        if duplicate:
            continue
        seen.insert(lo, w)
        out.append(w)
    return out


@dataclass(frozen=True)
class ActionCheck:
    checked: int
    passed: bool
    failure: str | None = None

    def to_json(self) -> dict:
        return {"checked": self.checked, "passed": self.passed, "failure": self.failure}


def partial_action_check(table: RealizationTable, g: Element) -> ActionCheck:
    """Left translation by g must act increasingly on the realized stations.

    Checks every enumerated g_i with g*g_i also enumerated: the induced
    partial map on values is strictly increasing.
    """
    pairs: list[tuple[Fraction, Fraction]] = []
    for g_i, t_i in zip(table.elements, table.values):
        t_image = table.lookup(g * g_i)
        if t_image is not None:
            pairs.append((t_i, t_image))
    pairs.sort()
    for (a0, b0), (a1, b1) in zip(pairs, pairs[1:]):
        if not b1 > b0:
            return ActionCheck(len(pairs), False,
                               f"stations {a0}->{b0} and {a1}->{b1} are not increasing")
    return ActionCheck(len(pairs), True)


# ---------------------------------------------------------------------------
# sampled circle actions


@dataclass(frozen=True)
class SampledCircleAction:
    """Orbit data of the unit-translation normalization of an anchored cone.

    theta order-embeds the floor-zero stratum into [0,1) with the identity
    at 0; t'(h) = floor(h) + theta(remainder(h)).  Only remainders present
    in the stratum table can be evaluated; others raise MissingOrbitPoint.
    """

    ctx: AnchorContext
    stratum: tuple[Element, ...]
    theta_values: tuple[Fraction, ...]
    stored: tuple[Element, ...]

    @property
    def cone(self) -> Cone:
        return self.ctx.cone

    @property
    def anchor(self) -> Element:
        return self.ctx.anchor

    def floor(self, h: Element) -> int:
        return power_floor(self.ctx, h)

    def remainder(self, h: Element) -> Element:
        return (self.anchor ** (-self.floor(h))) * h

    def theta(self, s: Element) -> Fraction:
        lo, hi = 0, len(self.stratum)
        while lo < hi:
            mid = (lo + hi) // 2
            c = compare(self.cone, self.stratum[mid], s)
            if c == 0:
                return self.theta_values[mid]
            if c < 0:
                lo = mid + 1
            else:
                hi = mid
        raise MissingOrbitPoint(
            f"remainder {s.render()!r} is not in the sampled stratum; extend the ball")

    def t_prime(self, h: Element) -> Fraction:
        return self.floor(h) + self.theta(self.remainder(h))

    def to_json(self) -> dict:
        return {
            "anchor": self.anchor.render(),
            "stratum": [s.render() for s in self.stratum],
            "theta": [format_rational(v) for v in self.theta_values],
            "stored": [g.render() for g in self.stored],
        }


def _build_theta(cone: Cone, stratum: Sequence[Element]) -> tuple[tuple[Element, ...], tuple[Fraction, ...]]:
    """Order-embed the stratum into [0,1): identity at 0, the rest affinely
    rescaled from their realization stations into [eps, 1-eps]."""
    table = realize(cone, list(stratum))
    others = [(g, t) for g, t in zip(table.elements, table.values) if t != 0]
    eps = Fraction(1, len(stratum) + 2)
    rescaled: dict[int, Fraction] = {}
    if others:
        t_min = min(t for _, t in others)
        t_max = max(t for _, t in others)
        for i, (g, t) in enumerate(zip(table.elements, table.values)):
            if t == 0:
                continue
            if t_max == t_min:
                rescaled[i] = Fraction(1, 2)
            else:
                rescaled[i] = eps + (t - t_min) * (1 - 2 * eps) / (t_max - t_min)
    pairs = []
    for i, g in enumerate(table.elements):
        value = Fraction(0) if table.values[i] == 0 else rescaled[i]
        pairs.append((g, value))
    pairs.sort(key=lambda p: p[1])
    return tuple(g for g, _ in pairs), tuple(v for _, v in pairs)


def _require_central_cofinal(cone: Cone, x: Element) -> None:
    if not is_central_braid(cone, x):
        raise UnsupportedInput(
            f"anchor {x.render()!r} is not central; the circle quotient needs "
            "a central anchor")
    if is_cofinal(cone, x) != Decision.YES:
        raise UnsupportedInput("anchor must be certified cofinal")


def circle_action_from_ball(cone: Cone, x: Element, radius: int) -> SampledCircleAction:
    """Sample the circle action on the default ball enumeration."""
    _require_central_cofinal(cone, x)
    ctx = AnchorContext(cone, x)
    ball = ball_enumeration(cone, radius)
    return _action_for(ctx, ball)


def circle_action_for_samples(cone: Cone, x: Element,
                              elements: Iterable[Element]) -> SampledCircleAction:
    """Sample the circle action with coverage for the given elements."""
    _require_central_cofinal(cone, x)
    ctx = AnchorContext(cone, x)
    return _action_for(ctx, list(elements))


def _action_for(ctx: AnchorContext, elements: list[Element]) -> SampledCircleAction:
    # The identity anchors the stratum (theta = 0) even if nothing in the
    # sample has a trivial remainder.
    identity = ctx.cone.group.identity()
    remainders: list[Element] = [identity]
    sorted_reps: list[Element] = [identity]
    for h in elements:
        s = (ctx.anchor ** (-power_floor(ctx, h))) * h
        lo, hi = 0, len(sorted_reps)
        duplicate = False
        while lo < hi:
            mid = (lo + hi) // 2
            c = compare(ctx.cone, sorted_reps[mid], s)
            if c == 0:
                duplicate = True
                break
            if c < 0:
                lo = mid + 1
            else:
                hi = mid
        if duplicate:
            continue
        sorted_reps.insert(lo, s)
        remainders.append(s)
    stratum, theta = _build_theta(ctx.cone, remainders)
    return SampledCircleAction(ctx, stratum, theta, tuple(elements))


def unit_translation_check(action: SampledCircleAction) -> ActionCheck:
    """t'(x h) = t'(h) + 1 across the stored sample."""
    checked = 0
    for h in action.stored:
        lhs = action.t_prime(action.anchor * h)
        rhs = action.t_prime(h) + 1
        checked += 1
        if lhs != rhs:
            return ActionCheck(checked, False,
                               f"t'(x*{h.render()!r}) = {lhs} but t'+1 = {rhs}")
    return ActionCheck(checked, True)


# ---------------------------------------------------------------------------
# the Euler cocycle identity


@dataclass(frozen=True)
class EulerIdentityReport:
    euler_cocycle: Fraction
    coboundary: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "euler_cocycle": format_rational(self.euler_cocycle),
            "quasimorphism_coboundary": self.coboundary,
            "passed": self.passed,
        }


def euler_identity_check(action: SampledCircleAction, f: Element, g: Element) -> EulerIdentityReport:
    """Compare the lift cocycle with the quasimorphism coboundary.

    The left side composes the sampled normalized lifts at 0:
    sigma(FG)^{-1} sigma(F) sigma(G) evaluated through the t' table, where
    sigma(F)(t) = t'(f . ) - floor(f) and sigma(G)(0) is the theta of g's
    remainder.  The right side is floor(f) + floor(g) - floor(fg).  The
    identity asserted is lift cocycle = -(coboundary), the cochain form of
    "rotation class = minus the Euler class".  A non-integer composition
    value means the sampled data is inconsistent and fails the check.
    """
    floor_f = action.floor(f)
    floor_g = action.floor(g)
    floor_fg = action.floor(f * g)
    sigma_f_of_sigma_g_zero = action.t_prime(f * action.remainder(g)) - floor_f
    sigma_fg_zero = action.theta(action.remainder(f * g))
    euler = sigma_f_of_sigma_g_zero - sigma_fg_zero
    coboundary = floor_f + floor_g - floor_fg
    return EulerIdentityReport(euler, coboundary, euler == -coboundary)


@dataclass(frozen=True)
class EulerSurvey:
    total: int
    passed: int
    failures: tuple[str, ...]

    @property
    def all_passed(self) -> bool:
        return self.passed == self.total and not self.failures

    def to_json(self) -> dict:
        return {"total": self.total, "passed": self.passed, "failures": list(self.failures)}


def euler_cocycle_survey(cone: Cone, x: Element, count: int, seed: int,
                         radius: int = 3) -> EulerSurvey:
    """Run the identity over random pairs from the radius ball."""
    rng = random.Random(seed)
    pairs = []
    needed: list[Element] = []
    ctx = AnchorContext(cone, x)
    for _ in range(count):
        f = random_element(cone.group, rng, radius)
        g = random_element(cone.group, rng, radius)
        pairs.append((f, g))
        remainder_g = (x ** (-power_floor(ctx, g))) * g
        needed.extend([g, f * g, f * remainder_g])
    action = circle_action_for_samples(cone, x, needed)
    passed, failures = 0, []
    for f, g in pairs:
        report = euler_identity_check(action, f, g)
        if report.passed:
            passed += 1
        else:
            failures.append(
                f"f={f.render()!r} g={g.render()!r}: euler {report.euler_cocycle}, "
                f"coboundary {report.coboundary}")
    return EulerSurvey(len(pairs), passed, tuple(failures))


# ---------------------------------------------------------------------------
# equivalence verdicts


@dataclass(frozen=True)
class EquivalenceVerdict:
    outcome: str  # "Equivalent" | "NotEquivalent" | "Unknown"
    mode: str  # "dynamical" | "semi-dynamical"
    reason: str | None = None
    left_class: RotationClass | None = None
    right_class: RotationClass | None = None

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "mode": self.mode,
            "reason": self.reason,
            "left_class": self.left_class.to_json() if self.left_class else None,
            "right_class": self.right_class.to_json() if self.right_class else None,
        }


def dynamically_equivalent(left: Cone, right: Cone, x: Element,
                           mode: str = "dynamical",
                           approx_order: int = 300) -> EquivalenceVerdict:
    """Equivalent iff the rotation classes agree exactly.

    Dynamical mode additionally demands both orderings be certified dense
    (conjugacy of the realizations); semi-dynamical mode drops density.
    Certified-interval overlap proves nothing, so braid-backed comparisons
    can return Unknown.
    """
    if mode not in ("dynamical", "semi-dynamical"):
        raise UnsupportedInput(f"unknown mode {mode!r}")
    for cone, side in ((left, "left"), (right, "right")):
        if not is_central_braid(cone, x):
            return EquivalenceVerdict("Unknown", mode, f"{side}: anchor not central")
        cof = is_cofinal(cone, x)
        if cof != Decision.YES:
            return EquivalenceVerdict("Unknown", mode, f"{side}: anchor not cofinal ({cof.value})")
    if mode == "dynamical":
        for cone, side in ((left, "left"), (right, "right")):
            density = is_dense(cone)
            if density.outcome != Density.DENSE:
                return EquivalenceVerdict(
                    "Unknown", mode, f"{side}: not dense ({density.outcome.value})")
    from .errors import IntervalUndecided

    # Conjugation invariance of the stable map: after peeling central
    # conjugations, structurally equal cones have equal classes exactly.
    if unwrap_central_conjugation(left, x) == unwrap_central_conjugation(right, x):
        try:
            the_class = rotation_class(left, x, approx_order=approx_order)
        except IntervalUndecided:
            the_class = None
        return EquivalenceVerdict("Equivalent", mode,
                                  "same cone after unwinding conjugation",
                                  the_class, the_class)
    try:
        left_class = rotation_class(left, x, approx_order=approx_order)
        right_class = rotation_class(right, x, approx_order=approx_order)
    except IntervalUndecided as exc:
        return EquivalenceVerdict("Unknown", mode, str(exc))
    answer = left_class.equals(right_class)
    if answer == Decision.YES:
        return EquivalenceVerdict("Equivalent", mode, None, left_class, right_class)
    if answer == Decision.NO:
        return EquivalenceVerdict("NotEquivalent", mode, None, left_class, right_class)
    return EquivalenceVerdict("Unknown", mode, "certified intervals overlap",
                              left_class, right_class)
