"""Exception types shared across the package.

Every error carries a stable machine-readable ``code`` (used verbatim in CLI
JSON output) and the CLI exit code it maps to: 2 for invalid input, 3 for
"could not decide within the configured caps".
"""


class OrdoError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"
    exit_code = 2


class ParseError(OrdoError):
    """Malformed element expression, rational literal, or JSON document."""

    code = "ParseError"
    exit_code = 2


class GroupMismatch(OrdoError):
    """Operands belong to different groups."""

    code = "GroupMismatch"
    exit_code = 2


class UnsupportedInput(OrdoError):
    """Structurally valid input outside the supported fragment.

    Examples: rank-deficient restriction matrices, anchors whose first-level
    pairing is irrational, subgroup data the brute-force oracle cannot
    enumerate.
    """

    code = "UnsupportedInput"
    exit_code = 2


class AnchorIsIdentity(OrdoError):
    """The bracketing anchor must not be the identity."""

    code = "AnchorIsIdentity"
    exit_code = 2


class NotCofinal(OrdoError):
    """The anchor is certified non-cofinal for the requested subgroup."""

    code = "NotCofinal"
    exit_code = 2


class NotRightInvariant(OrdoError):
    """The ordering is certified not right-invariant under the anchor."""

    code = "NotRightInvariant"
    exit_code = 2


class NotRealizable(OrdoError):
    """Prescribed translation data does not pair to 1 with the anchor."""

    code = "NotRealizable"
    exit_code = 2


class NotBracketedWithinCap(OrdoError):
    """No bracketing power was found within the search cap."""

    code = "NotBracketedWithinCap"
    exit_code = 3


class MembershipUnknown(OrdoError):
    """A required membership predicate answered Unknown within its cap."""

    code = "MembershipUnknown"
    exit_code = 3


class IntervalUndecided(OrdoError):
    """A certified interval straddles a decision boundary."""

    code = "IntervalUndecided"
    exit_code = 3


class HandleReductionLimit(OrdoError):
    """Handle reduction exceeded its step cap (guards against bugs, not theory)."""

    code = "HandleReductionLimit"
    exit_code = 3


class MissingOrbitPoint(OrdoError):
    """A sampled circle action does not cover a required orbit point."""

    code = "MissingOrbitPoint"
    exit_code = 3


class InvariantViolation(OrdoError):
    """An internal invariant failed; indicates a bug, never widened silently."""

    code = "InvariantViolation"
    exit_code = 1
