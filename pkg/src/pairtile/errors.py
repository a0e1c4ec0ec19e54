"""Exception types raised by pairtile.

Every error carries a ``field`` (a JSON-style path into the input, when one
is known) and a ``details`` dict so the CLI can report it verbatim.
"""

from __future__ import annotations

from typing import Any


class PairtileError(Exception):
    def __init__(self, message: str, field: str | None = None, **details: Any):
        super().__init__(message)
        self.message = message
        self.field = field
        self.details = details

    @property
    def kind(self) -> str:
        return type(self).__name__

    def to_json(self) -> dict:
        out: dict[str, Any] = {"error": self.kind, "message": self.message}
        if self.field is not None:
            out["field"] = self.field
        if self.details:
            out["details"] = self.details
        return out


class ParseError(PairtileError):
    """Malformed input document (bad JSON, unknown key, non-rational numeral)."""


class InvariantViolation(PairtileError, ValueError):
    """A value was well-formed but breaks a type invariant."""


class ZeroVector(InvariantViolation):
    pass


class DegenerateInput(InvariantViolation):
    pass


class MultiComponent(InvariantViolation):
    pass


class NotPairing(InvariantViolation):
    """Some direction class does not hold exactly two edges."""


class UnequalLengths(InvariantViolation):
    """A parallel edge pair has different lengths, so no multiple tiling exists."""


class NotConvex(InvariantViolation):
    pass


class NotSymmetric(InvariantViolation):
    pass


class NotDiscrete(PairtileError):
    """The common zero set contains whole lines."""


class NonIntegerWeight(PairtileError, AssertionError):
    """Criterion accepted but |K|/det is not an integer. Indicates a bug."""


class OracleDisagreement(PairtileError, AssertionError):
    pass
