"""Translation-number invariants of anchored orderings.

The stable values of a basis of the (torsion-free) abelianization, reduced
mod 1, form the rotation class of an anchored ordering: a tuple in [0,1)^b
that plays the role of a bounded-cohomology class whenever real bounded
2-cohomology of the subgroup vanishes.  The unreduced tuple (with an
infinity marker when the anchor is not cofinal) is the translation-value
lift.  Flag orderings give exact constants; braid cones give certified
intervals, and a reduction that cannot be decided at the working precision
raises rather than guesses.

Also here: naturality of the class under restriction, the construction of a
flag ordering realizing prescribed translation numbers (exactly those tuples
pairing to 1 with the anchor are realizable), and the doubled-circle
coordinates for orderings of Z^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import (
    GroupMismatch,
    IntervalUndecided,
    InvariantViolation,
    MembershipUnknown,
    NotCofinal,
    NotRealizable,
    NotRightInvariant,
    UnsupportedInput,
)
from .exactreal import ONE, RealConstant, linear_combination, mod_one, q_rank
from .groups import Element, GroupRef, LatticeElement
from .orderings import (
    Cone,
    ConjugatedOrdering,
    Decision,
    FlagOrdering,
    cone_sign,
    is_central_braid,
    is_cofinal,
    is_right_invariant,
)
from .quasimorph import (
    AnchorContext,
    StableValue,
    stable_approx,
    stable_enclosure,
    stable_exact,
)

Component = RealConstant | StableValue

DEFAULT_APPROX_ORDER = 300


def default_basis(group: GroupRef) -> tuple[Element, ...]:
    """Basis of the free part of the abelianization.

    For Z^n the standard basis; for braid groups the abelianization is Z and
    all generators are homologous, so the first generator represents it.
    """
    if group.is_abelian:
        return tuple(group.generators())
    return (group.generators()[0],)


def _require_membership(cone: Cone, x: Element, generators: Sequence[Element] | None,
                        need_cofinal: bool) -> None:
    invariance = is_right_invariant(cone, x, generators)
    if invariance.outcome == Decision.NO:
        raise NotRightInvariant(
            f"right multiplication by {x.render()!r} does not preserve the order "
            f"(witness {invariance.witness.render()!r})")
    if invariance.outcome == Decision.UNKNOWN:
        raise MembershipUnknown("right-invariance under the anchor is undecided")
    if need_cofinal:
        cof = is_cofinal(cone, x, generators)
        if cof == Decision.NO:
            raise NotCofinal(f"{x.render()!r} is not cofinal for the subgroup")
        if cof == Decision.UNKNOWN:
            raise MembershipUnknown("cofinality of the anchor is undecided")


def unwrap_central_conjugation(cone: Cone, x: Element) -> Cone:
    """Peel conjugations off a cone when the anchor is central.

    Stable values are conjugation-invariant, so a conjugated cone has the
    same translation invariants as its base whenever the anchor is central;
    unwrapping keeps braid answers exact where possible.
    """
    while isinstance(cone, ConjugatedOrdering) and is_central_braid(cone, x):
        cone = cone.base
    return cone


def _reduce_window_mod_one(low: Fraction, high: Fraction) -> StableValue:
    if math.floor(low) != math.floor(high):
        raise IntervalUndecided(
            f"window [{low}, {high}] straddles an integer; "
            "raise the approximation order")
    shift = math.floor(low)
    mid = (low + high) / 2 - shift
    return StableValue(mid, (high - low) / 2)


def _component_in_unit_interval(c: Component) -> bool:
    if isinstance(c, RealConstant):
        return c.sign() >= 0 and (ONE - c).sign() > 0
    return c.approx - c.radius >= 0 and c.approx + c.radius < 1


def _components_equal(a: Component, b: Component) -> Decision:
    if isinstance(a, RealConstant) and isinstance(b, RealConstant):
        return Decision.YES if a == b else Decision.NO
    if isinstance(b, RealConstant):
        a, b = b, a
    if isinstance(a, RealConstant):
        # Exact against interval: disjoint proves difference, overlap proves nothing.
        below = (a - ONE.scale(b.approx - b.radius)).sign() < 0
        above = (a - ONE.scale(b.approx + b.radius)).sign() > 0
        return Decision.NO if below or above else Decision.UNKNOWN
    return Decision.UNKNOWN if a.overlaps(b) else Decision.NO


def component_to_json(c: Component) -> dict:
    if isinstance(c, RealConstant):
        return {"exact": c.to_json()}
    return c.to_json()


@dataclass(frozen=True)
class RotationClass:
    """Mod-1 stable values on an abelianization basis; each entry in [0,1)."""

    components: tuple[Component, ...]
    basis: tuple[Element, ...]

    def __post_init__(self) -> None:
        for c in self.components:
            if not _component_in_unit_interval(c):
                raise InvariantViolation(f"rotation class component {c} outside [0,1)")

    def equals(self, other: "RotationClass") -> Decision:
        if len(self.components) != len(other.components):
            raise GroupMismatch("rotation classes over different bases")
        verdicts = [_components_equal(a, b)
                    for a, b in zip(self.components, other.components)]
        if any(v == Decision.NO for v in verdicts):
            return Decision.NO
        if all(v == Decision.YES for v in verdicts):
            return Decision.YES
        return Decision.UNKNOWN

    def to_json(self) -> dict:
        return {
            "components": [component_to_json(c) for c in self.components],
            "basis": [b.render() for b in self.basis],
        }


@dataclass(frozen=True)
class TranslationValues:
    """Unreduced stable values, or the infinity marker for non-cofinal anchors."""

    components: tuple[Component, ...] | None
    basis: tuple[Element, ...]

    @property
    def is_infinity(self) -> bool:
        return self.components is None

    def to_json(self) -> dict:
        if self.is_infinity:
            return {"infinity": True, "basis": [b.render() for b in self.basis]}
        return {
            "infinity": False,
            "components": [component_to_json(c) for c in self.components],
            "basis": [b.render() for b in self.basis],
        }


def _stable_components(cone: Cone, x: Element, basis: Sequence[Element],
                       approx_order: int) -> tuple[Component, ...]:
    if isinstance(cone, FlagOrdering):
        return tuple(stable_exact(cone, x, y) for y in basis)
    ctx = AnchorContext(cone, x)
    return tuple(stable_approx(ctx, y, approx_order) for y in basis)


def rotation_class(cone: Cone, x: Element, basis: Sequence[Element] | None = None,
                   generators: Sequence[Element] | None = None,
                   approx_order: int = DEFAULT_APPROX_ORDER) -> RotationClass:
    """Stable values of the basis, reduced mod 1.

    Requires the anchor to be order-compatible (right-invariance) and
    cofinal; an Unknown membership answer raises rather than guessing.
    Braid components reduce their sharp one-sided enclosure, so a stable
    value sitting exactly on an integer still reduces cleanly.
    """
    cone = unwrap_central_conjugation(cone, x)
    _require_membership(cone, x, generators, need_cofinal=True)
    basis = tuple(basis) if basis is not None else default_basis(cone.group)
    if isinstance(cone, FlagOrdering):
        reduced: tuple[Component, ...] = tuple(
            mod_one(stable_exact(cone, x, y)) for y in basis)
    else:
        ctx = AnchorContext(cone, x)
        reduced = tuple(
            _reduce_window_mod_one(*stable_enclosure(ctx, y, approx_order))
            for y in basis)
    return RotationClass(reduced, basis)


def translation_values(cone: Cone, x: Element, basis: Sequence[Element] | None = None,
                       generators: Sequence[Element] | None = None,
                       approx_order: int = DEFAULT_APPROX_ORDER) -> TranslationValues:
    """The unreduced lift; non-cofinal anchors map to infinity."""
    cone = unwrap_central_conjugation(cone, x)
    _require_membership(cone, x, generators, need_cofinal=False)
    basis = tuple(basis) if basis is not None else default_basis(cone.group)
    cof = is_cofinal(cone, x, generators)
    if cof == Decision.NO:
        return TranslationValues(None, basis)
    if cof == Decision.UNKNOWN:
        raise MembershipUnknown("cofinality of the anchor is undecided")
    return TranslationValues(_stable_components(cone, x, basis, approx_order), basis)


# ---------------------------------------------------------------------------
# naturality under restriction


@dataclass(frozen=True)
class NaturalityReport:
    passed: bool
    sublattice_basis: tuple[tuple[int, ...], ...]
    pulled_back: tuple[RealConstant, ...]
    restricted: tuple[RealConstant, ...]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "sublattice_basis": [list(b) for b in self.sublattice_basis],
            "pulled_back": [c.to_json() for c in self.pulled_back],
            "restricted": [c.to_json() for c in self.restricted],
        }


def _integer_coordinates(basis_rows: Sequence[Sequence[int]], vec: Sequence[int]) -> list[int]:
    solution = linalg.rational_solve(
        [[Fraction(row[i]) for row in basis_rows] for i in range(len(vec))],
        [Fraction(v) for v in vec])
    if solution is None or any(c.denominator != 1 for c in solution):
        raise InvariantViolation("vector not in the sublattice it was built from")
    return [int(c) for c in solution]


def naturality_check(flag: FlagOrdering, x: LatticeElement,
                     sublattice: Sequence[LatticeElement]) -> NaturalityReport:
    """Restriction commutes with the class: pull back the values on the big
    lattice to the sublattice, versus recomputing inside the restricted
    ordering; both reductions mod 1 must agree exactly.

    The restricted ordering is taken on the lattice generated by the
    sublattice together with the anchor, so the anchor survives restriction.
    """
    columns = [k.coords for k in sublattice]
    ambient = translation_values(flag, x)
    if ambient.is_infinity:
        raise NotCofinal("anchor is not cofinal on the ambient lattice")
    pulled = tuple(
        mod_one(linear_combination(zip(col, ambient.components)))
        for col in columns)

    span_rows = [list(col) for col in columns] + [list(x.coords)]
    basis_rows = linalg.row_hnf(span_rows)
    restricted_flag = flag.restrict(basis_rows)
    sub = restricted_flag.group
    x_inside = LatticeElement(sub, tuple(_integer_coordinates(basis_rows, x.coords)))
    restricted = []
    for col in columns:
        k_inside = LatticeElement(sub, tuple(_integer_coordinates(basis_rows, col)))
        restricted.append(mod_one(stable_exact(restricted_flag, x_inside, k_inside)))
    restricted = tuple(restricted)

    passed = all(a == b for a, b in zip(pulled, restricted))
    return NaturalityReport(passed, tuple(tuple(b) for b in basis_rows), pulled, restricted)


# ---------------------------------------------------------------------------
# construction from prescribed translation numbers


def is_realizable(values: Sequence[RealConstant], x: LatticeElement) -> bool:
    """Prescribed translation numbers are realizable iff they pair to exactly 1."""
    pairing = linear_combination(zip(x.coords, values))
    return pairing == ONE


def construct_from_translations(values: Sequence[RealConstant], x: LatticeElement,
                                tiebreak: FlagOrdering | None = None) -> FlagOrdering:
    """A flag ordering whose translation numbers at the anchor are the values.

    The first level is the prescribed vector itself; the remaining levels
    order the integer kernel of the pairing, by default lexicographically in
    the coordinates of its Hermite-form basis.  Read-back: the stable value
    of e_i is values[i], and the rotation class is the values mod 1.
    """
    n = len(values)
    if x.group.rank != n:
        raise GroupMismatch("anchor rank does not match the value vector")
    if x.is_identity:
        raise NotRealizable("anchor must be a nonzero lattice element")
    if not is_realizable(values, x):
        pairing = linear_combination(zip(x.coords, values))
        raise NotRealizable(f"values pair to {pairing}, need exactly 1")

    keys = sorted({m for v in values for m, _ in v.terms})
    constraint_rows = [
        linalg.clear_denominators([v.coefficient(k) for v in values]) for k in keys]
    kernel = linalg.integer_kernel_basis(constraint_rows, n)
    basis_rows = linalg.row_hnf(kernel) if kernel else []

    duals: list[list[Fraction]] = []
    for l in range(len(basis_rows)):
        rhs = [Fraction(1 if i == l else 0) for i in range(len(basis_rows))]
        dual = linalg.rational_solve(basis_rows, rhs)
        if dual is None:
            raise InvariantViolation("kernel basis has no dual functionals")
        duals.append(dual)

    levels: list[list[RealConstant]] = [list(values)]
    if tiebreak is None:
        for dual in duals:
            levels.append([RealConstant.rational(c) for c in dual])
    else:
        if tiebreak.group.rank != len(basis_rows):
            raise UnsupportedInput(
                f"tiebreak rank {tiebreak.group.rank} does not match the kernel "
                f"dimension {len(basis_rows)}")
        for level in tiebreak.levels:
            combined = [
                linear_combination((dual[i], level[l]) for l, dual in enumerate(duals))
                for i in range(n)]
            levels.append(combined)

    try:
        return FlagOrdering.create(levels)
    except UnsupportedInput as exc:
        raise NotRealizable(f"rank completion failed: {exc}") from exc


# ---------------------------------------------------------------------------
# doubled-circle coordinates for orderings of Z^2


@dataclass(frozen=True)
class SikoraPoint:
    """Direction of a rank-2 flag, with the side bit for rational directions.

    A rational direction (p, q) is stored primitive; the side records the
    sign of the ordering on the kernel generator (-q, p), i.e. which of the
    two orderings with the same rational direction this is.  An irrational
    direction is stored as the first level rescaled to primitive integer
    coefficients.
    """

    kind: str  # "rational" | "irrational"
    direction: tuple
    side: int | None = None

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {
                "kind": "rational",
                "direction": list(self.direction),
                "side": "plus" if self.side > 0 else "minus",
            }
        return {
            "kind": "irrational",
            "direction": [c.to_json() for c in self.direction],
        }


def sikora_coordinate(flag: FlagOrdering) -> SikoraPoint:
    """The doubled-circle coordinate of a flag ordering of Z^2."""
    if flag.group.rank != 2:
        raise UnsupportedInput("doubled-circle coordinates need rank 2")
    c1, c2 = flag.levels[0]
    if q_rank([c1, c2]) == 2:
        return SikoraPoint("irrational", _primitive_pair(c1, c2))
    reference = c1 if not c1.is_zero else c2
    ref_key, ref_coeff = reference.terms[0]
    ratios = (c1.coefficient(ref_key) / ref_coeff, c2.coefficient(ref_key) / ref_coeff)
    denom = math.lcm(ratios[0].denominator, ratios[1].denominator)
    p, q = int(ratios[0] * denom), int(ratios[1] * denom)
    g = math.gcd(p, q)
    p, q = p // g, q // g
    # Fix the sign so the first level is a positive multiple of (p, q).
    ref_int = p if not c1.is_zero else q
    if reference.sign() * (1 if ref_int > 0 else -1) < 0:
        p, q = -p, -q
    kernel_gen = LatticeElement(flag.group, (-q, p))
    side = cone_sign(flag, kernel_gen)
    if side == 0:
        raise InvariantViolation("kernel generator has sign zero in a total flag")
    return SikoraPoint("rational", (p, q), side)


def _primitive_pair(c1: RealConstant, c2: RealConstant) -> tuple[RealConstant, RealConstant]:
    denoms = [q.denominator for c in (c1, c2) for _, q in c.terms]
    scale = math.lcm(*denoms) if denoms else 1
    numerators = [int(q * scale) for c in (c1, c2) for _, q in c.terms]
    content = math.gcd(*numerators) if numerators else 1
    factor = Fraction(scale, content if content else 1)
    return (c1.scale(factor), c2.scale(factor))


def slope_of(point: SikoraPoint) -> RealConstant | None:
    """Second coordinate of the double cover: q/p, or None for infinity.

    For an irrational point the slope is the exact ratio of the direction
    entries, available when the first entry is rational (the same condition
    under which the translation value of the second generator is exact).
    """
    if point.kind == "rational":
        p, q = point.direction
        if p == 0:
            return None
        return RealConstant.rational(Fraction(q, p))
    c1, c2 = point.direction
    if c1.is_zero:
        return None
    if not c1.is_rational:
        raise UnsupportedInput(
            "slope of an irrational direction with irrational first entry "
            "is outside the supported constant field")
    return c2 / c1.as_rational()
