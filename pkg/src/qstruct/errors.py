"""Exception taxonomy shared by every verification and construction routine.

The split mirrors the CLI exit-code contract: parse/structural problems are
input errors (exit 2), everything else is a semantic failure (exit 1).
"""

from __future__ import annotations

from typing import Any


class QstructError(Exception):
    """Base class. ``details`` carries a JSON-serializable witness payload."""

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.details = details


class ParseError(QstructError):
    """Input file cannot be decoded into a well-formed structure description."""


class StructuralError(QstructError):
    """Tables are not even well-formed (duplicate labels, off-domain entries...)."""


class DomainError(QstructError):
    """An operation's precondition does not hold for the given arguments."""


class AxiomViolationError(QstructError):
    """Structure data contradicts its own axioms in a way that blocks the operation."""


class ConstructionError(QstructError):
    """A construction failed its posterior verification; bug or inconsistent input."""
