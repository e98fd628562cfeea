"""Exceptions raised throughout the package.

Input errors map to exit code 2 in the command line front end, semantic errors to
exit code 1.
"""

from typing import Any


class CyclordError(Exception):
    """Base class for all errors raised by `cyclord`."""

    def __init__(self, *message: Any):
        self.message = message
        super().__init__(*self.message)


class InputError(CyclordError):
    """Exception raised when an operation is given malformed input."""


class UnknownLabelError(InputError):
    """Exception raised when a label is not part of the ground set."""


class LabelMismatchError(InputError):
    """Exception raised when two structures should share a label set but do not."""


class PartialMapError(InputError):
    """Exception raised when a mapping is not total on its domain."""


class DomainMismatchError(InputError):
    """Exception raised when maps cannot be composed."""


class NotACycleError(InputError):
    """Exception raised when a label sequence is not an (injective) cycle."""


class NotSubcycleError(InputError):
    """Exception raised when a bonding map is requested for incomparable cycles."""


class WindowExceededError(InputError):
    """Exception raised when an operation leaves the explicit window of a host."""


class ParseError(InputError):
    """Exception raised when an input document cannot be parsed."""


class SizeBoundError(InputError):
    """Exception raised when an exhaustive check exceeds the configured size bound."""


class BudgetExceededError(InputError):
    """Exception raised when an enumeration would exceed its budget."""


class NotOrderPreservingError(InputError):
    """Exception raised when an input map that must be linear order preserving is not."""


class SemanticError(CyclordError):
    """Base class for failures of the mathematical content of an input."""


class NotCopError(SemanticError):
    """Exception raised when a map that must be c-order preserving is not."""


class NotEquivariantError(SemanticError):
    """Exception raised when a map is not a G-map for the given actions."""


class HypothesisError(SemanticError):
    """Exception raised when the hypotheses of a construction are not met."""


class InvariantViolation(SemanticError):
    """Exception raised when a constructed object fails its own invariants."""


class BudgetExhausted(CyclordError):
    """Raised by a probe budget once it has been spent.

    Public operations catch it and report an unresolved outcome instead.
    """

    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"Probe budget of {limit} exhausted.")
