"""Positive-cone oracles for left orderings.

A cone knows its group and answers a total sign question: sign(g) is +1 when
g is order-positive, -1 when g is order-negative, 0 exactly for the identity.
The two axioms every cone must satisfy:

  LO1  positives are closed under multiplication;
  LO2  {positives, negatives, identity} partition the group.

Two concrete families are provided.  Flag orderings of Z^n compare the exact
pairings of an element against a sequence of constant vectors, first nonzero
pairing wins; they satisfy LO1/LO2 by construction whenever the stacked
rational expansion of the levels has full rank.  The Dehornoy ordering of the
braid group calls a word positive when it admits a representative in which
the lowest occurring generator index appears only positively; handle
reduction decides this.

Also here: restriction of flag orderings to sublattices, the conjugation
action on cones, and the bounded/exact membership predicates (cofinality,
right-invariance under an anchor, density).
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    AnchorIsIdentity,
    GroupMismatch,
    HandleReductionLimit,
    InvariantViolation,
    ParseError,
    UnsupportedInput,
)
from .exactreal import RealConstant, linear_combination, q_rank
from .groups import (
    BraidWord,
    Element,
    GroupRef,
    LatticeElement,
    braid_words_up_to,
    free_reduce,
    full_twist,
    parse_element,
    random_element,
)

DEFAULT_REDUCTION_STEPS = 400_000


class Decision(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown_within_cap"


class Density(str, enum.Enum):
    DENSE = "dense"
    DISCRETE = "discrete"
    UNKNOWN = "unknown_within_cap"


class Cone:
    """Order oracle interface: a group plus a total sign function."""

    group: GroupRef

    def sign(self, g: Element) -> int:
        raise NotImplementedError


def cone_sign(cone: Cone, g: Element) -> int:
    if g.group != cone.group:
        raise GroupMismatch(f"element of {g.group} queried against cone over {cone.group}")
    return cone.sign(g)


def compare(cone: Cone, a: Element, b: Element) -> int:
    """Sign of the order comparison: -1 if a < b, 0 if equal, +1 if a > b."""
    return -cone_sign(cone, a.inverse() * b)


# ---------------------------------------------------------------------------
# flag orderings of Z^n


def _pairing(level: Sequence[RealConstant], coords: Sequence[int]) -> RealConstant:
    return linear_combination(zip(coords, level))


@dataclass(frozen=True)
class FlagOrdering(Cone):
    """Lexicographic comparison against a flag of exact constant vectors."""

    group: GroupRef
    levels: tuple[tuple[RealConstant, ...], ...]

    def __post_init__(self) -> None:
        if not self.group.is_abelian:
            raise ParseError("flag orderings are defined on free abelian groups")
        for level in self.levels:
            if len(level) != self.group.rank:
                raise ParseError(
                    f"level length {len(level)} does not match rank {self.group.rank}")

    @staticmethod
    def create(levels: Sequence[Sequence[RealConstant]], check: bool = True) -> "FlagOrdering":
        if not levels:
            raise ParseError("a flag ordering needs at least one level")
        rank = len(levels[0])
        flag = FlagOrdering(GroupRef.free_abelian(rank), tuple(tuple(lv) for lv in levels))
        if check and not flag.is_total():
            raise UnsupportedInput(
                "flag is rank-deficient: some nonzero vector pairs to zero at every level")
        return flag

    @staticmethod
    def from_rational_rows(rows: Sequence[Sequence[int | Fraction]], check: bool = True) -> "FlagOrdering":
        levels = [[RealConstant.rational(x) for x in row] for row in rows]
        return FlagOrdering.create(levels, check=check)

    @staticmethod
    def lex(rank: int) -> "FlagOrdering":
        """The lexicographic ordering of Z^rank."""
        rows = [[1 if j == i else 0 for j in range(rank)] for i in range(rank)]
        return FlagOrdering.from_rational_rows(rows)

    @cached_property
    def _expansion(self) -> list[list[tuple[int, tuple[Fraction, ...]]]]:
        # Per level: one rational row per occurring squarefree radicand.
        out = []
        for level in self.levels:
            keys = sorted({m for c in level for m, _ in c.terms})
            out.append([(k, tuple(c.coefficient(k) for c in level)) for k in keys])
        return out

    def expansion_rows(self) -> list[list[Fraction]]:
        """All rational coefficient rows of all levels, stacked."""
        return [list(row) for rows in self._expansion for _, row in rows]

    def is_total(self) -> bool:
        return linalg.rational_rank(self.expansion_rows()) == self.group.rank

    def sign(self, g: LatticeElement) -> int:
        coords = g.coords
        for rows in self._expansion:
            terms = []
            for key, row in rows:
                dot = Fraction(0)
                for r, c in zip(row, coords):
                    if c:
                        dot += r * c
                if dot:
                    terms.append((key, dot))
            if not terms:
                continue
            if len(terms) == 1:
                return 1 if terms[0][1] > 0 else -1
            return RealConstant(tuple(terms)).sign()
        return 0

    def level_pairing(self, j: int, g: LatticeElement | Sequence[int]) -> RealConstant:
        coords = g.coords if isinstance(g, LatticeElement) else tuple(g)
        return _pairing(self.levels[j], coords)

    def restrict(self, basis: Sequence[LatticeElement] | Sequence[Sequence[int]]) -> "FlagOrdering":
        """The induced ordering on the sublattice spanned by the basis columns."""
        columns = [b.coords if isinstance(b, LatticeElement) else tuple(b) for b in basis]
        if not columns:
            raise UnsupportedInput("restriction needs at least one basis vector")
        for col in columns:
            if len(col) != self.group.rank:
                raise UnsupportedInput("basis vector length does not match the ambient rank")
        matrix = [list(col) for col in columns]
        if linalg.rational_rank(matrix) != len(columns):
            raise UnsupportedInput("restriction basis is rank-deficient")
        new_levels = []
        for level in self.levels:
            new_level = tuple(_pairing(level, col) for col in columns)
            if any(not c.is_zero for c in new_level):
                new_levels.append(new_level)
        restricted = FlagOrdering.create(new_levels, check=False)
        if not restricted.is_total():
            raise InvariantViolation("restriction of a total flag lost totality")
        return restricted


# ---------------------------------------------------------------------------
# handle reduction and the Dehornoy ordering

Letters = tuple[tuple[int, int], ...]


def handle_reduce(letters: Iterable[tuple[int, int]], strands: int,
                  max_steps: int = DEFAULT_REDUCTION_STEPS) -> Letters:
    """Reduce a braid word until it contains no handle.

    A handle is a subword  s_i^e ... s_i^-e  whose interior only uses
    generator indices > i; reducing it deletes the flanking letters and
    rewrites each interior s_{i+1}^d as s_{i+1}^-e s_i^d s_{i+1}^e.  The
    first handle (earliest closing letter) is reduced at every step, so the
    handle being reduced never contains a nested one.  The step cap guards
    against implementation bugs; the procedure itself always terminates.
    """
    word = list(free_reduce(letters))
    steps = 0
    while True:
        last = [-1] * (strands + 1)
        handle = None
        for j, (idx, e) in enumerate(word):
            p = -1
            for i in range(1, idx + 1):
                if last[i] > p:
                    p = last[i]
            if p >= 0 and word[p][0] == idx and word[p][1] == -e:
                handle = (p, j)
                break
            last[idx] = j
        if handle is None:
            return tuple(word)
        p, j = handle
        idx, e = word[p]
        body: list[tuple[int, int]] = []
        for k, d in word[p + 1:j]:
            if k == idx + 1:
                body.append((k, -e))
                body.append((idx, d))
                body.append((k, e))
            else:
                body.append((k, d))
        word = list(free_reduce(word[:p] + body + word[j + 1:]))
        steps += 1
        if steps > max_steps:
            raise HandleReductionLimit(
                f"no reduced form after {max_steps} handle reductions")


def main_generator_sign(reduced: Letters) -> int:
    """Sign of a handle-free word: the lowest occurring index is one-signed."""
    if not reduced:
        return 0
    lowest = min(idx for idx, _ in reduced)
    signs = {e for idx, e in reduced if idx == lowest}
    if len(signs) != 1:
        raise InvariantViolation("handle-free word with a two-signed main generator")
    return signs.pop()


@dataclass(frozen=True)
class DehornoyOrdering(Cone):
    """Order oracle for the braid group via sigma-positivity."""

    group: GroupRef
    max_steps: int = DEFAULT_REDUCTION_STEPS

    def __post_init__(self) -> None:
        if self.group.is_abelian:
            raise ParseError("the Dehornoy ordering lives on braid groups")

    @staticmethod
    def create(strands: int, max_steps: int = DEFAULT_REDUCTION_STEPS) -> "DehornoyOrdering":
        return DehornoyOrdering(GroupRef.braid(strands), max_steps)

    @cached_property
    def _sign_cache(self) -> dict[Letters, int]:
        return {}

    def reduced(self, letters: Iterable[tuple[int, int]]) -> Letters:
        return handle_reduce(letters, self.group.strands, self.max_steps)

    def sign(self, g: BraidWord) -> int:
        cached = self._sign_cache.get(g.letters)
        if cached is None:
            cached = main_generator_sign(self.reduced(g.letters))
            if len(self._sign_cache) < (1 << 18):
                self._sign_cache[g.letters] = cached
        return cached


@dataclass(frozen=True)
class ConjugatedOrdering(Cone):
    """sign(g) = sign_base(c g c^-1); the right action of c^-1 on cones."""

    base: Cone
    conjugator: Element
    group: GroupRef = field(init=False)

    def __post_init__(self) -> None:
        if self.conjugator.group != self.base.group:
            raise GroupMismatch("conjugator must live in the cone's group")
        object.__setattr__(self, "group", self.base.group)

    def sign(self, g: Element) -> int:
        return self.base.sign(self.conjugator * g * self.conjugator.inverse())


def act(cone: Cone, h: Element) -> Cone:
    """Move the cone by h: the new cone ranks g by the old rank of h g h^-1.

    Conjugation is trivial in abelian groups, so the cone is returned as is.
    """
    if h.group != cone.group:
        raise GroupMismatch("conjugator must live in the cone's group")
    if cone.group.is_abelian:
        return cone
    if isinstance(cone, ConjugatedOrdering):
        return ConjugatedOrdering(cone.base, cone.conjugator * h)
    return ConjugatedOrdering(cone, h)


def base_cone(cone: Cone) -> Cone:
    return cone.base if isinstance(cone, ConjugatedOrdering) else cone


def is_central_braid(cone: Cone, x: Element) -> bool:
    """Whether x is a (nonzero or zero) power of the full twist, hence central."""
    if x.group.is_abelian:
        return True
    if x.is_identity:
        return True
    period = x.group.strands * (x.group.strands - 1)
    total = x.exponent_sum()
    if total % period != 0:
        return False
    twist = full_twist(x.group.strands)
    return cone_sign(cone, x * twist ** (-(total // period))) == 0


# ---------------------------------------------------------------------------
# axiom checking


@dataclass(frozen=True)
class AxiomsReport:
    passed: bool
    samples: int
    lo1_checked: int
    lo1_failures: tuple[str, ...]
    lo2_failures: tuple[str, ...]
    kernel_witness: str | None

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "samples": self.samples,
            "lo1_checked": self.lo1_checked,
            "lo1_failures": list(self.lo1_failures),
            "lo2_failures": list(self.lo2_failures),
            "kernel_witness": self.kernel_witness,
        }


def axioms_check(cone: Cone, samples: int, seed: int, radius: int = 8) -> AxiomsReport:
    """Sampled LO1/LO2 verification, plus an exact kernel analysis for flags.

    LO2 failures and LO1 failures are reported with witnesses; for a flag
    whose stacked expansion is rank-deficient the kernel vector found by
    exact linear algebra is reported even if sampling misses it.
    """
    rng = random.Random(seed)
    lo1_failures: list[str] = []
    lo2_failures: list[str] = []
    lo1_checked = 0
    for _ in range(samples):
        g = random_element(cone.group, rng, radius)
        h = random_element(cone.group, rng, radius)
        sg, sg_inv = cone_sign(cone, g), cone_sign(cone, g.inverse())
        if g.is_identity:
            ok = sg == 0 and sg_inv == 0
        else:
            ok = sg == -sg_inv and sg != 0
        if not ok:
            lo2_failures.append(g.render())
        if sg > 0 and cone_sign(cone, h) > 0:
            lo1_checked += 1
            if cone_sign(cone, g * h) <= 0:
                lo1_failures.append(f"{g.render()} | {h.render()}")

    kernel_witness = None
    if isinstance(cone, FlagOrdering):
        rows = [linalg.clear_denominators(row) for row in cone.expansion_rows()]
        kernel = linalg.integer_kernel_basis(rows, cone.group.rank)
        if kernel:
            witness = LatticeElement(cone.group, tuple(kernel[0]))
            if not witness.is_identity:
                kernel_witness = witness.render()
                lo2_failures.append(witness.render())

    passed = not lo1_failures and not lo2_failures
    return AxiomsReport(passed, samples, lo1_checked,
                        tuple(lo1_failures), tuple(lo2_failures), kernel_witness)


# ---------------------------------------------------------------------------
# membership predicates


def _default_generators(group: GroupRef) -> list[Element]:
    return group.generators()


def is_cofinal(cone: Cone, x: Element, generators: Sequence[Element] | None = None,
               cap: int = 64) -> Decision:
    """Do powers of x bracket the subgroup generated by the given elements?

    Exact for flag orderings.  For braid cones the answer is Yes outright
    when x is a nonzero central twist power (universally cofinal).  For a
    non-central anchor only a bounded per-generator bracket search runs,
    and its success does not extend to products without right-invariance
    (all generators of B_3 are bracketed by powers of s1, yet the full
    twist is not), so the verdict stays Unknown either way.
    """
    if x.group != cone.group:
        raise GroupMismatch("anchor must live in the cone's group")
    if x.is_identity:
        raise AnchorIsIdentity("cofinality anchor must not be the identity")
    gens = list(generators) if generators is not None else _default_generators(cone.group)

    if isinstance(cone, FlagOrdering):
        for j in range(len(cone.levels)):
            if cone.level_pairing(j, x).sign() != 0:
                return Decision.YES
            if any(cone.level_pairing(j, h).sign() != 0 for h in gens):
                return Decision.NO
        # Every generator pairs to zero everywhere: the subgroup is trivial.
        return Decision.YES

    sx = cone_sign(cone, x)
    if sx == 0:
        raise AnchorIsIdentity("anchor word represents the identity braid")
    if is_central_braid(cone, x):
        return Decision.YES

    y = x if sx > 0 else x.inverse()
    for h in gens:
        n, found = 1, False
        while n <= cap:
            above = cone_sign(cone, h.inverse() * y ** n) > 0
            below = cone_sign(cone, y ** n * h) > 0
            if above and below:
                found = True
                break
            n *= 2
        if not found:
            return Decision.UNKNOWN
    # Every generator is bracketed, but that is generator-level evidence
    # only; without right-invariance it does not certify the subgroup.
    return Decision.UNKNOWN


@dataclass(frozen=True)
class InvarianceVerdict:
    outcome: Decision
    witness: Element | None = None

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "witness": self.witness.render() if self.witness is not None else None,
        }


def is_right_invariant(cone: Cone, x: Element, generators: Sequence[Element] | None = None,
                       cap: int = 5) -> InvarianceVerdict:
    """Does right multiplication by x preserve the order on <generators, x>?

    Yes without search for abelian groups and for central braid anchors.
    Otherwise all words z of length <= cap over the generators and x are
    checked for sign(z) == sign(x^-1 z x); a mismatch is a definite No.
    """
    if x.group != cone.group:
        raise GroupMismatch("anchor must live in the cone's group")
    if cone.group.is_abelian:
        return InvarianceVerdict(Decision.YES)
    if is_central_braid(cone, x):
        return InvarianceVerdict(Decision.YES)

    gens = list(generators) if generators is not None else _default_generators(cone.group)
    alphabet: list[Element] = []
    for g in gens + [x]:
        alphabet.append(g)
        alphabet.append(g.inverse())
    x_inv = x.inverse()
    frontier: list[Element] = [cone.group.identity()]
    for _ in range(cap):
        next_frontier = []
        for word in frontier:
            for letter in alphabet:
                z = word * letter
                if z.is_identity:
                    continue
                if cone_sign(cone, z) != cone_sign(cone, x_inv * z * x):
                    return InvarianceVerdict(Decision.NO, z)
                next_frontier.append(z)
        frontier = next_frontier
    return InvarianceVerdict(Decision.UNKNOWN)


@dataclass(frozen=True)
class DensityVerdict:
    outcome: Density
    minimal_positive: Element | None = None
    smallest_positive_seen: Element | None = None

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "minimal_positive":
                self.minimal_positive.render() if self.minimal_positive is not None else None,
            "smallest_positive_seen":
                self.smallest_positive_seen.render()
                if self.smallest_positive_seen is not None else None,
        }


def _flag_density(flag: FlagOrdering) -> DensityVerdict:
    rank = flag.group.rank
    # Kernel lattices K_j of the first j levels; find the last level that
    # still sees a nonzero sublattice.
    kernels: list[list[list[int]]] = []
    stacked: list[list[int]] = []
    for rows in flag._expansion:
        stacked.extend(linalg.clear_denominators(row) for _, row in rows)
        kernels.append(linalg.integer_kernel_basis(stacked, rank))
    previous_kernel = [[1 if j == i else 0 for j in range(rank)] for i in range(rank)]
    last_level = None
    for j, kernel in enumerate(kernels):
        if not kernel:
            last_level = j
            break
        previous_kernel = kernel
    if last_level is None:
        raise UnsupportedInput("flag is rank-deficient; density is undefined")
    # The order on the sublattice spanned by previous_kernel is archimedean,
    # embedded in R by the pairing with level `last_level`.
    basis = linalg.row_hnf(previous_kernel)
    values = [flag.level_pairing(last_level, b) for b in basis]
    if q_rank(values) >= 2:
        return DensityVerdict(Density.DENSE)
    reference = next(v for v in values if not v.is_zero)
    ref_key, ref_coeff = reference.terms[0]
    ratios = [v.coefficient(ref_key) / ref_coeff for v in values]
    for v, q in zip(values, ratios):
        if v != reference.scale(q):
            raise InvariantViolation("rank-1 values are not rationally proportional")
    denom = math.lcm(*(q.denominator for q in ratios))
    numerators = [int(q * denom) for q in ratios]
    _, coeffs = linalg.extended_gcd_vector(numerators)
    element = [0] * rank
    for c, b in zip(coeffs, basis):
        for i in range(rank):
            element[i] += c * b[i]
    candidate = LatticeElement(flag.group, tuple(element))
    if flag.sign(candidate) < 0:
        candidate = candidate.inverse()
    if flag.sign(candidate) <= 0:
        raise InvariantViolation("minimal positive candidate is not positive")
    return DensityVerdict(Density.DISCRETE, minimal_positive=candidate)


def is_dense(cone: Cone, cap: int = 5) -> DensityVerdict:
    """Dense means no minimal positive element.

    Exact for flag orderings: the final archimedean stratum is discrete iff
    its image in R has Q-rank 1, and then the minimal positive element is
    pulled back exactly.  For braid cones only a bounded search is run and
    the verdict stays Unknown, reporting the smallest positive found.
    """
    if isinstance(cone, FlagOrdering):
        return _flag_density(cone)
    smallest: Element | None = None
    for w in braid_words_up_to(cone.group, cap):
        if cone_sign(cone, w) > 0:
            if smallest is None or cone_sign(cone, w.inverse() * smallest) > 0:
                smallest = w
    return DensityVerdict(Density.UNKNOWN, smallest_positive_seen=smallest)


# ---------------------------------------------------------------------------
# JSON schema


def ordering_to_json(cone: Cone) -> dict:
    return {"group": cone.group.to_json(), "ordering": _part_to_json(cone)}


def _part_to_json(cone: Cone) -> dict:
    if isinstance(cone, FlagOrdering):
        return {
            "type": "flag",
            "levels": [[c.to_json() for c in level] for level in cone.levels],
        }
    if isinstance(cone, DehornoyOrdering):
        return {"type": "dehornoy"}
    if isinstance(cone, ConjugatedOrdering):
        return {
            "type": "conjugated",
            "base": _part_to_json(cone.base),
            "by": cone.conjugator.render(),
        }
    raise UnsupportedInput(f"cannot serialize cone of type {type(cone).__name__}")


def ordering_from_json(doc: dict) -> Cone:
    if not isinstance(doc, dict) or "group" not in doc or "ordering" not in doc:
        raise ParseError("ordering document needs 'group' and 'ordering' fields")
    group = GroupRef.from_json(doc["group"])
    return _part_from_json(group, doc["ordering"])


def _part_from_json(group: GroupRef, obj: dict) -> Cone:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ParseError("ordering part needs a 'type' field")
    kind = obj["type"]
    if kind == "flag":
        levels = obj.get("levels")
        if not isinstance(levels, list) or not levels:
            raise ParseError("flag ordering needs a nonempty 'levels' list")
        parsed = [[RealConstant.from_json(c) for c in level] for level in levels]
        for level in parsed:
            if len(level) != group.rank:
                raise ParseError("flag level length does not match the group rank")
        return FlagOrdering.create(parsed)
    if kind == "dehornoy":
        if group.is_abelian:
            raise ParseError("the Dehornoy ordering needs a braid group")
        return DehornoyOrdering(group)
    if kind == "conjugated":
        base = _part_from_json(group, obj.get("base", {}))
        conjugator = parse_element(obj.get("by", ""), group)
        return ConjugatedOrdering(base, conjugator)
    raise ParseError(f"unknown ordering type: {kind!r}")
