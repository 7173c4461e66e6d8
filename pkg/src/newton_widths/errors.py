"""Shared exception types.

The CLI maps these onto its exit-code contract: hypothesis/screen failures
exit 2, resource caps exit 3, malformed input exits 1.
"""


class HypothesisError(ValueError):
    """A precondition of an asymptotic statement does not hold for the input.

    The message names the failing hypothesis (missing constant term, missing
    axis point, degeneracy verdict, ...).
    """


class CapExceeded(RuntimeError):
    """An enumeration hit its configured hard cap before finishing."""


class UnboundedRegion(ValueError):
    """A lattice region is provably infinite, so counting it is refused."""
