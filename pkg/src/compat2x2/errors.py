"""Semantic exception hierarchy.

Every error the library raises on bad input or a failed computation derives
from :class:`CompatError`, so callers (and the CLI) can distinguish "you gave
me garbage" from bugs.
"""


class CompatError(Exception):
    """Base class for all library errors."""


class NegativeCount(CompatError):
    """A cell count is negative (or not an integer)."""


class EmptyTable(CompatError):
    """All four cell counts are zero."""


class InvalidPsi(CompatError):
    """Hypothesized odds ratio is not a positive finite number."""


class InvalidAlpha(CompatError):
    """Level outside its valid range."""


class InvalidP(CompatError):
    """Probability outside [0, 1]."""


class InvalidK(CompatError):
    """Test count below 1."""


class InvalidGrid(CompatError):
    """Malformed grid specification."""


class InvalidSpec(CompatError):
    """Malformed simulation or power specification."""


class ZeroCell(CompatError):
    """An operation requiring all cells > 0 met a zero cell."""


class ZeroExpectedCount(CompatError):
    """A zero margin makes an expected count zero."""


class NonpositiveSE(CompatError):
    """Standard error must be positive."""


class DegeneratePrior(CompatError):
    """Prior interval has zero width."""


class NonConvergence(CompatError):
    """Iterative fit hit its iteration cap before converging."""


class EmptyCurve(CompatError):
    """Cannot render a curve with no points."""


class UnsupportedFormat(CompatError):
    """Unknown serialization format."""
