"""Identity and warning bookkeeping shared by domain entities."""

from abc import ABC
from dataclasses import dataclass
from typing import Hashable, List, Tuple


@dataclass(frozen=True)
class DomainEvent:
    """A warning an entity raised about itself.

    Subclasses only rename the event; the class name is what reports show.
    No timestamp, so report bytes do not depend on when a run happened.
    """

    message: str

    @property
    def name(self) -> str:
        return type(self).__name__

    def describe(self) -> str:
        return f"{self.name}: {self.message}"


class Entity(ABC):
    """An object identified by a hashable key rather than by its contents.

    Events are kept in raise order; raising an equal event twice keeps the
    first one only.
    """

    def __init__(self, key: Hashable):
        self._key = key
        self._events: List[DomainEvent] = []

    @property
    def id(self) -> Hashable:
        return self._key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Entity) and type(other) is type(self) and other._key == self._key

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._key))

    def _raise_event(self, event: DomainEvent) -> None:
        if event not in self._events:
            self._events.append(event)

    def peek_events(self) -> Tuple[DomainEvent, ...]:
        return tuple(self._events)

    def collect_events(self) -> Tuple[DomainEvent, ...]:
        """Return the pending events and forget them."""
        events, self._events = tuple(self._events), []
        return events
