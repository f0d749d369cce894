"""
Exception hierarchy for graphaxial.

Every error also derives from the builtin it refines, so code catching
``ValueError`` or ``ZeroDivisionError`` keeps working.
"""

from typing import Any, Optional


class GraphAxialError(Exception):
    """Base class for all graphaxial errors."""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class DivisionByZero(GraphAxialError, ZeroDivisionError):
    """Division by zero in an exact field (includes 1/2 in characteristic 2)."""


class ParseError(GraphAxialError, ValueError):
    """Malformed scalar text or input document."""


class FieldMismatch(GraphAxialError, ValueError):
    """Operands live over different fields."""


class InvalidGraph(GraphAxialError, ValueError):
    """A labeled digraph violates the loop / multi-edge / zero-label rules."""


class InvalidLabel(GraphAxialError, ValueError):
    """A label that must be nonzero is zero."""


class NotWeaklyConnected(GraphAxialError, ValueError):
    """The underlying graph is not connected."""


class NotIdealSubgraph(GraphAxialError, ValueError):
    """A vertex set does not satisfy the ideal subgraph conditions."""


class NotAnIdeal(GraphAxialError, ValueError):
    """A subspace is not closed under multiplication by the basis."""


class NotGenerating(GraphAxialError, ValueError):
    """A generator set does not generate the group."""


class IdentityGenerator(GraphAxialError, ValueError):
    """The identity was passed as a generator."""


class InvalidGroup(GraphAxialError, ValueError):
    """A multiplication table violates the group axioms."""


class NotSemisimple(GraphAxialError, ValueError):
    """An adjoint map is not diagonalizable: an incident label equals 1 or its eigenvectors fall short of a basis."""


class SpectrumOutsideLaw(GraphAxialError, ValueError):
    """An axis has an eigenvalue the fusion law does not know about."""


class BudgetExceeded(GraphAxialError, ValueError):
    """An enumeration would exceed the configured candidate cap."""


class InfiniteField(GraphAxialError, ValueError):
    """An exhaustive operation was requested over the rationals."""


class FieldTooSmall(GraphAxialError, ValueError):
    """The field lacks enough labels for the requested scheme."""


class VerificationFailed(GraphAxialError, ValueError):
    """A construction did not pass its independent verification."""


class ConfigError(GraphAxialError, ValueError):
    """Invalid toolkit configuration."""
