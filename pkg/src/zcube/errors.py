"""Exception types shared across the package."""

from __future__ import annotations


class ContractViolation(ValueError):
    """An argument violates an operation's precondition."""


class ParseError(ValueError):
    """Text is not a valid bit string.

    ``position`` is the 1-based index of the offending character, or None
    when the input is empty.
    """

    def __init__(self, message: str, position: int | None = None) -> None:
        super().__init__(message)
        self.position = position


class CapExceeded(RuntimeError):
    """A desk-scale materialization or exact-search cap was exceeded."""


class Unsupported(RuntimeError):
    """The requested object does not exist at this dimension."""
