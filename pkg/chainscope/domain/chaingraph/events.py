"""Warnings raised while building and analyzing transition graphs."""

from ..shared.base_entity import DomainEvent


class SparseGraphWarning(DomainEvent):
    """Epsilon is below the box diameter in strict mode; conclusions may be vacuous."""


class EmptyGraphWarning(DomainEvent):
    """The graph has no edges at all."""


class MixingBoundExceeded(DomainEvent):
    """No mixing certificate was found within the length bound."""
