"""The bracketing quasimorphism of an anchored ordering and its stable map.

Fix a cone P and an anchor x with x != 1.  When powers of x bracket a
subgroup H and right multiplication by x preserves the order on <H, x>, the
integer

    power_floor(h) = N  with  x^N <= h < x^{N+1}   (x positive)
                     N  with  x^N <= h < x^{N-1}   (x negative)

is a quasimorphism of defect 1 on H: bracketing f and g separately brackets
fg within a two-power window.  Its stable map

    stable(h) = lim power_floor(h^N) / N

is homogeneous and conjugation-invariant; the defect bound makes
power_floor(h^N)/N a certified approximation with radius 1/N.  On flag
orderings the stable map is computed exactly as a pairing ratio.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (
    AnchorIsIdentity,
    GroupMismatch,
    InvariantViolation,
    NotBracketedWithinCap,
    NotCofinal,
    UnsupportedInput,
)
from .exactreal import ONE, RealConstant, combine
from .groups import Element, random_element
from .orderings import Cone, Decision, FlagOrdering, cone_sign, is_cofinal

DEFAULT_CAP = 1 << 62


@dataclass(frozen=True)
class AnchorContext:
    """A cone with a bracketing anchor and the subgroup the floors live on.

    With require_cofinal the context refuses anchors certified non-cofinal
    (exact on flag orderings); without it a non-cofinal anchor surfaces
    later as NotBracketedWithinCap from the search itself.
    """

    cone: Cone
    anchor: Element
    generators: tuple[Element, ...] | None = None
    cap: int = DEFAULT_CAP
    require_cofinal: bool = True

    def __post_init__(self) -> None:
        if self.anchor.group != self.cone.group:
            raise GroupMismatch("anchor must live in the cone's group")
        if self.cap < 1:
            raise UnsupportedInput("search cap must be positive")
        if cone_sign(self.cone, self.anchor) == 0:
            raise AnchorIsIdentity("anchor must not be the identity")
        if self.require_cofinal and isinstance(self.cone, FlagOrdering):
            gens = list(self.generators) if self.generators is not None else None
            if is_cofinal(self.cone, self.anchor, gens) == Decision.NO:
                raise NotCofinal("anchor is not cofinal for the requested subgroup")

    @property
    def anchor_sign(self) -> int:
        return cone_sign(self.cone, self.anchor)


def _max_true(pred: Callable[[int], bool], cap: int) -> int:
    """Largest N with pred(N), where pred holds on a down-closed set of Z."""
    if pred(0):
        lo, hi = 0, 1
        while pred(hi):
            lo, hi = hi, hi * 2
            if hi > cap:
                raise NotBracketedWithinCap(f"no bracket within exponent cap {cap}")
    else:
        hi, lo = 0, -1
        while not pred(lo):
            hi, lo = lo, lo * 2
            if -lo > cap:
                raise NotBracketedWithinCap(f"no bracket within exponent cap {cap}")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


def power_floor(ctx: AnchorContext, h: Element) -> int:
    """The bracketing integer of h, located by doubling then binary search.

    Compares h against anchor powers through the cone only; every query is
    sign(x^-N h), so the value depends on finitely many cone answers.
    """
    if h.group != ctx.cone.group:
        raise GroupMismatch("element must live in the cone's group")
    x = ctx.anchor

    def at_least(n: int) -> bool:
        return cone_sign(ctx.cone, (x ** (-n)) * h) >= 0

    if ctx.anchor_sign > 0:
        return _max_true(at_least, ctx.cap)
    return -_max_true(lambda m: at_least(-m), ctx.cap)


rho = power_floor


@dataclass(frozen=True)
class StableValue:
    """A certified approximation, optionally with the exact value attached."""

    approx: Fraction
    radius: Fraction
    exact: RealConstant | None = None

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise UnsupportedInput("radius must be nonnegative")
        if self.exact is not None:
            low = combine(self.exact, ONE, 1, -(self.approx - self.radius))
            high = combine(ONE, self.exact, self.approx + self.radius, -1)
            if low.sign() < 0 or high.sign() < 0:
                raise InvariantViolation(
                    f"exact value {self.exact} outside certified interval "
                    f"{self.approx} +- {self.radius}")

    def overlaps(self, other: "StableValue") -> bool:
        return abs(self.approx - other.approx) <= self.radius + other.radius

    def to_json(self) -> dict:
        from .exactreal import format_rational

        return {
            "value": format_rational(self.approx),
            "radius": format_rational(self.radius),
            "exact": self.exact.to_json() if self.exact is not None else None,
        }


def stable_exact(flag: FlagOrdering, x: Element, h: Element) -> RealConstant:
    """Exact stable value on a flag ordering: a ratio of first-level pairings.

    At the first level seeing the anchor, power_floor(h^N) tracks
    N * <v, h> / <v, x> within 1, so the limit is the pairing ratio.  The
    anchor pairing must be a nonzero rational: irrational anchor pairings
    would take the ratio outside the supported constant field and are
    rejected rather than approximated.
    """
    if x.group != flag.group or h.group != flag.group:
        raise GroupMismatch("anchor and element must live in the flag's group")
    if x.is_identity:
        raise AnchorIsIdentity("anchor must not be the identity")
    for j in range(len(flag.levels)):
        px = flag.level_pairing(j, x)
        if not px.is_zero:
            if not px.is_rational:
                raise UnsupportedInput(
                    f"anchor pairing {px} at level {j + 1} is irrational; "
                    "rescale the flag so the anchor pairing is rational")
            return flag.level_pairing(j, h) / px.as_rational()
        if not flag.level_pairing(j, h).is_zero:
            raise NotCofinal(
                f"element pairs nonzero at level {j + 1} where the anchor is blind")
    raise NotCofinal("anchor pairs to zero at every level")


def stable_approx(ctx: AnchorContext, h: Element, n: int) -> StableValue:
    """power_floor(h^n)/n with certified radius 1/n.

    The radius follows from defect 1: floors of powers are superadditive up
    to 1 per split, so |stable(h) - floor(h^n)/n| <= 1/n.
    """
    if n < 1:
        raise UnsupportedInput("approximation order must be >= 1")
    approx = Fraction(power_floor(ctx, h ** n), n)
    exact = None
    if isinstance(ctx.cone, FlagOrdering):
        exact = stable_exact(ctx.cone, ctx.anchor, h)
    return StableValue(approx, Fraction(1, n), exact)


def stable_enclosure(ctx: AnchorContext, h: Element, n: int) -> tuple[Fraction, Fraction]:
    """Sharp one-sided window [lo, hi] containing the stable value.

    With a positive anchor the defect lands in {-1, 0}, so floors of powers
    are superadditive and floor(h^nm) <= m*floor(h^n) + m - 1; the limit
    therefore lies in [floor(h^n)/n, (floor(h^n)+1)/n].  A negative anchor
    mirrors the window.  Both endpoints are attainable.
    """
    if n < 1:
        raise UnsupportedInput("approximation order must be >= 1")
    value = power_floor(ctx, h ** n)
    if ctx.anchor_sign > 0:
        return Fraction(value, n), Fraction(value + 1, n)
    return Fraction(value - 1, n), Fraction(value, n)


def defect_cocycle(ctx: AnchorContext, f: Element, g: Element) -> int:
    """floor(f) + floor(g) - floor(fg); lands in {-1,0} (positive anchor)
    or {0,1} (negative anchor).  Any value outside that set is a bug and is
    raised, never silently admitted."""
    value = power_floor(ctx, f) + power_floor(ctx, g) - power_floor(ctx, f * g)
    allowed = (-1, 0) if ctx.anchor_sign > 0 else (0, 1)
    if value not in allowed:
        raise InvariantViolation(
            f"defect cocycle value {value} outside {allowed} for "
            f"f={f.render()!r}, g={g.render()!r}")
    return value


# ---------------------------------------------------------------------------
# stable-map property suite


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    detail: str
    passed: bool


@dataclass(frozen=True)
class StableMapReport:
    checks: tuple[PropertyCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[PropertyCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "detail": c.detail, "passed": c.passed}
                for c in self.checks
            ],
        }


def stable_map_properties(ctx: AnchorContext, elements: Sequence[Element] | None = None,
                          seed: int = 0, sample_count: int = 6, approx_n: int = 300,
                          powers: Sequence[int] = (-3, -2, -1, 0, 1, 2, 3),
                          radius: int = 4) -> StableMapReport:
    """Conjugation invariance, homogeneity, and bounded sums of the stable map.

    Exact on flag orderings, certified-interval on braid cones.
    """
    rng = random.Random(seed)
    group = ctx.cone.group
    if elements is None:
        elements = [random_element(group, rng, radius) for _ in range(sample_count)]
    exact_mode = isinstance(ctx.cone, FlagOrdering)
    checks: list[PropertyCheck] = []

    # Conjugation invariance: stable(a^-1 h a) = stable(h).
    for h in elements:
        a = random_element(group, rng, radius)
        conj = a.inverse() * h * a
        if exact_mode:
            same = stable_exact(ctx.cone, ctx.anchor, conj) == stable_exact(
                ctx.cone, ctx.anchor, h)
            detail = f"exact equality for h={h.render()!r}, a={a.render()!r}"
        else:
            left = stable_approx(ctx, conj, approx_n)
            right = stable_approx(ctx, h, approx_n)
            same = left.overlaps(right)
            detail = (f"intervals {left.approx}+-{left.radius} vs "
                      f"{right.approx}+-{right.radius} for h={h.render()!r}")
        checks.append(PropertyCheck("conjugation_invariance", detail, same))

    # Homogeneity: stable(h^M) = M * stable(h).
    for h in elements:
        for m in powers:
            if exact_mode:
                ok = stable_exact(ctx.cone, ctx.anchor, h ** m) == \
                    stable_exact(ctx.cone, ctx.anchor, h).scale(m)
                detail = f"exact for h={h.render()!r}, M={m}"
            else:
                if m == 0:
                    ok = power_floor(ctx, group.identity()) == 0
                    detail = "floor of identity is 0"
                else:
                    whole = stable_approx(ctx, h ** m, max(1, approx_n // max(1, abs(m))))
                    single = stable_approx(ctx, h, approx_n)
                    bound = whole.radius + abs(m) * single.radius
                    ok = abs(whole.approx - m * single.approx) <= bound
                    detail = f"|{whole.approx} - {m}*{single.approx}| <= {bound}"
            checks.append(PropertyCheck("homogeneity", detail, ok))

    # Bounded sums: if stable(h_1...h_k) = 0 then |sum stable(h_i)| <= k - 1.
    # Products equal to the identity give certified zeroes in both modes.
    for h in elements:
        parts = [h, h.inverse()]
        k = len(parts)
        if exact_mode:
            total = stable_exact(ctx.cone, ctx.anchor, parts[0])
            for p in parts[1:]:
                total = total + stable_exact(ctx.cone, ctx.anchor, p)
            ok = abs_leq_exact(total, k - 1)
            detail = f"|sum| <= {k - 1} exactly for h={h.render()!r}"
        else:
            values = [stable_approx(ctx, p, approx_n) for p in parts]
            total_approx = sum((v.approx for v in values), Fraction(0))
            total_radius = sum((v.radius for v in values), Fraction(0))
            ok = abs(total_approx) <= (k - 1) + total_radius
            detail = f"|{total_approx}| <= {k - 1} + {total_radius}"
        checks.append(PropertyCheck("bounded_sums", detail, ok))

    return StableMapReport(tuple(checks))


def abs_leq_exact(value: RealConstant, bound: int | Fraction) -> bool:
    upper = combine(ONE, value, Fraction(bound), -1)
    lower = combine(value, ONE, 1, Fraction(bound))
    return upper.sign() >= 0 and lower.sign() >= 0
