"""Exact constants in the rational span of square roots of squarefree integers.

A value is a finite sum  sum_m q_m * sqrt(m)  with rational coefficients q_m
and squarefree positive radicands m (m = 1 is the rational part).  Since
{sqrt(m) : m squarefree} is linearly independent over Q, the representation
is canonical and a value is zero iff its term map is empty.  This gives
decidable sign and floor: nonzero values are bounded away from zero, so
dyadic interval refinement terminates.

The span is closed under addition, negation and rational scaling, which is
everything the rest of the package needs.  Multiplication of two irrational
constants is deliberately not provided; division is only ever by rationals.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import InvariantViolation, ParseError

Rational = int | Fraction

_MAX_SIGN_BITS = 1 << 16

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" (no decimals, no whitespace)."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ParseError(f"not a rational literal: {text!r}")
    return Fraction(text)


def format_rational(q: Rational) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def squarefree_split(m: int) -> tuple[int, int]:
    """Write m = s*s*m0 with m0 squarefree; returns (s, m0)."""
    if m <= 0:
        raise ParseError(f"radicand must be positive: {m}")
    s, m0, d = 1, m, 2
    while d * d <= m0:
        while m0 % (d * d) == 0:
            m0 //= d * d
            s *= d
        d += 1
    return s, m0


def _sqrt_bounds(m: int, bits: int) -> tuple[Fraction, Fraction]:
    """Dyadic enclosure lo <= sqrt(m) <= hi with hi - lo = 2**-bits."""
    scaled = math.isqrt(m << (2 * bits))
    denom = 1 << bits
    lo = Fraction(scaled, denom)
    if scaled * scaled == m << (2 * bits):
        return lo, lo
    return lo, Fraction(scaled + 1, denom)


@dataclass(frozen=True)
class RealConstant:
    """Canonical form: sorted (radicand, coefficient) pairs, no zero coefficients."""

    terms: tuple[tuple[int, Fraction], ...]

    @staticmethod
    def from_terms(terms: Mapping[int, Rational] | Iterable[tuple[int, Rational]]) -> "RealConstant":
        """Build from radicand -> coefficient data, normalizing radicands to squarefree."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for m, q in items:
            s, m0 = squarefree_split(int(m))
            q = Fraction(q) * s
            acc[m0] = acc.get(m0, Fraction(0)) + q
        return RealConstant(tuple(sorted((m, q) for m, q in acc.items() if q != 0)))

    @staticmethod
    def rational(q: Rational) -> "RealConstant":
        return RealConstant.from_terms({1: Fraction(q)})

    @staticmethod
    def sqrt(m: int, coeff: Rational = 1) -> "RealConstant":
        return RealConstant.from_terms({m: Fraction(coeff)})

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_rational(self) -> bool:
        return all(m == 1 for m, _ in self.terms)

    def coefficient(self, m: int) -> Fraction:
        for radicand, q in self.terms:
            if radicand == m:
                return q
        return Fraction(0)

    def as_rational(self) -> Fraction:
        if not self.is_rational:
            raise InvariantViolation(f"not a rational value: {self}")
        return self.terms[0][1] if self.terms else Fraction(0)

    # -- arithmetic (Q-linear only) ----------------------------------------

    def __add__(self, other: "RealConstant") -> "RealConstant":
        return combine(self, other, 1, 1)

    def __sub__(self, other: "RealConstant") -> "RealConstant":
        return combine(self, other, 1, -1)

    def __neg__(self) -> "RealConstant":
        return self.scale(-1)

    def scale(self, q: Rational) -> "RealConstant":
        q = Fraction(q)
        if q == 0:
            return ZERO
        return RealConstant(tuple((m, c * q) for m, c in self.terms))

    def __mul__(self, other: Rational) -> "RealConstant":
        if isinstance(other, RealConstant):
            raise TypeError("multiplication of two constants is not supported")
        return self.scale(other)

    __rmul__ = __mul__

    def __truediv__(self, q: Rational) -> "RealConstant":
        if isinstance(q, RealConstant):
            raise TypeError("division by an irrational constant is not supported")
        return div_by_rational(self, q)

    # -- decisions ----------------------------------------------------------

    def interval(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rational enclosure of the value at the given dyadic precision."""
        lo = hi = Fraction(0)
        for m, q in self.terms:
            if m == 1:
                lo += q
                hi += q
                continue
            slo, shi = _sqrt_bounds(m, bits)
            if q >= 0:
                lo += q * slo
                hi += q * shi
            else:
                lo += q * shi
                hi += q * slo
        return lo, hi

    def sign(self) -> int:
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            return 1 if self.terms[0][1] > 0 else -1
        bits = 16
        while bits <= _MAX_SIGN_BITS:
            lo, hi = self.interval(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2
        raise InvariantViolation(f"sign refinement did not terminate for {self}")

    def floor(self) -> int:
        if self.is_rational:
            return math.floor(self.as_rational())
        bits = 16
        while bits <= _MAX_SIGN_BITS:
            lo, hi = self.interval(bits)
            if math.floor(lo) == math.floor(hi):
                return math.floor(lo)
            bits *= 2
        raise InvariantViolation(f"floor refinement did not terminate for {self}")

    def __lt__(self, other: "RealConstant") -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: "RealConstant") -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: "RealConstant") -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: "RealConstant") -> bool:
        return (self - other).sign() >= 0

    # -- text and JSON -------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, q in self.terms:
            mag = abs(q)
            if m == 1:
                body = format_rational(mag)
            elif mag == 1:
                body = f"sqrt({m})"
            else:
                body = f"{format_rational(mag)}*sqrt({m})"
            parts.append(("- " if q < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def to_json(self) -> dict[str, str]:
        return {str(m): format_rational(q) for m, q in self.terms}

    @staticmethod
    def from_json(obj: Mapping[str, str]) -> "RealConstant":
        if not isinstance(obj, Mapping):
            raise ParseError(f"constant must be a JSON object, got {type(obj).__name__}")
        terms = {}
        for key, value in obj.items():
            try:
                m = int(key)
            except ValueError:
                raise ParseError(f"bad radicand key: {key!r}") from None
            terms[m] = parse_rational(value)
        return RealConstant.from_terms(terms)


ZERO = RealConstant(())
ONE = RealConstant(((1, Fraction(1)),))


def combine(a: RealConstant, b: RealConstant, s: Rational, t: Rational) -> RealConstant:
    """Exact s*a + t*b."""
    s, t = Fraction(s), Fraction(t)
    acc: dict[int, Fraction] = {}
    for m, q in a.terms:
        acc[m] = acc.get(m, Fraction(0)) + s * q
    for m, q in b.terms:
        acc[m] = acc.get(m, Fraction(0)) + t * q
    return RealConstant(tuple(sorted((m, q) for m, q in acc.items() if q != 0)))


def linear_combination(pairs: Iterable[tuple[Rational, RealConstant]]) -> RealConstant:
    """Exact sum of coefficient * constant over the pairs."""
    acc: dict[int, Fraction] = {}
    for coeff, const in pairs:
        coeff = Fraction(coeff)
        if coeff == 0:
            continue
        for m, q in const.terms:
            acc[m] = acc.get(m, Fraction(0)) + coeff * q
    return RealConstant(tuple(sorted((m, q) for m, q in acc.items() if q != 0)))


def sign(a: RealConstant) -> int:
    return a.sign()


def floor(a: RealConstant) -> int:
    return a.floor()


def div_by_rational(a: RealConstant, s: Rational) -> RealConstant:
    s = Fraction(s)
    if s == 0:
        raise ZeroDivisionError("division of a constant by zero")
    return a.scale(1 / s)


def q_rank(constants: Sequence[RealConstant]) -> int:
    """Dimension over Q of the span of the given constants."""
    keys = sorted({m for c in constants for m, _ in c.terms})
    if not keys:
        return 0
    rows = [[c.coefficient(m) for m in keys] for c in constants]
    return linalg.rational_rank(rows)


def mod_one(a: RealConstant) -> RealConstant:
    """Representative of a mod 1 in [0, 1)."""
    return combine(a, ONE, 1, -a.floor())
