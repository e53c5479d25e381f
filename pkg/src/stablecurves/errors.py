"""Domain errors.

Every error the library raises on bad mathematical input derives from
``DomainError``; the class name doubles as the machine-readable error code
reported by the service and the CLI.
"""


class DomainError(Exception):
    """Base class for all recoverable domain errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class ParseError(DomainError):
    """Malformed textual input (point literal, configuration, type string)."""


class CoincidentPoints(DomainError):
    """A triple or quadruple of points required to be distinct has a repeat."""


class OverlappingMarkingSets(DomainError):
    """Glue inputs share a marking label other than their glue legs."""


class OverlappingLabels(DomainError):
    """Signature composition inputs share a label."""


class TooFewMarkings(DomainError):
    """A stabilization or signature target has too few labels."""


class UnknownMarking(DomainError):
    """A referenced marking label does not occur in the tree."""


class InvalidTree(DomainError):
    """Input data does not describe a valid (decorated) stable tree."""


class InvalidPartition(DomainError):
    """The pair (K, L) is not a two-sided partition of the marking set."""


class OutOfRange(DomainError):
    """Enumeration size outside the supported 3..8 window."""


class DegenerateConfiguration(DomainError):
    """Four points with three or more coincident; no cutting form exists."""


class TooDegenerateType(DomainError):
    """Configuration type has fewer than three parts; orbit is not 3-dim."""


class NotMultilinear(DomainError):
    """An operation would push some variable to degree two."""


class MissingVariable(DomainError):
    """Evaluation assignment does not cover every variable."""


class GradeMismatch(DomainError):
    """Intersection pairing applied to classes of non-complementary grades."""


class IndexOutOfRange(DomainError):
    """Degeneration index outside 1..n-1."""


class BadReduction(DomainError):
    """Reduction mod p collapses points that are distinct over Q."""


class InsufficientSamples(DomainError):
    """Too few orbit samples to certify the rank of the evaluation matrix."""
