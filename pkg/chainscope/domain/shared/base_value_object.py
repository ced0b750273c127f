"""Base value object class for Domain-Driven Design."""

from abc import ABC, abstractmethod


class ValueObject(ABC):
    """Base class for value objects.

    Concrete value objects are frozen dataclasses: equality and hashing come
    from the dataclass, validation runs once at construction.
    """

    def __post_init__(self) -> None:
        self._validate()

    @abstractmethod
    def _validate(self) -> None:
        """Validate the fields. Raise DomainError if invalid."""
        pass
