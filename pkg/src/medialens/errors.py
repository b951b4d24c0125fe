"""Exception types shared across the engine.

The HTTP layer maps these onto status codes, so every error raised by an
engine operation carries a machine-readable ``code``.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine-level failures."""

    code = "engine-error"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code

    @property
    def message(self) -> str:
        return str(self)


class InputError(EngineError):
    """A request or record is structurally invalid."""

    code = "invalid-input"


class NotFoundError(EngineError):
    """A referenced article, topic, outlet or session does not exist."""

    code = "not-found"


class StageError(EngineError):
    """An operation was attempted in a workflow stage that forbids it."""

    code = "illegal-transition"
