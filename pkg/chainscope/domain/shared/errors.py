"""Error hierarchy shared by every layer.

Findings that are data (semiconjugacy violations, unshadowed chains,
theorem disagreements) are reported, never raised.
"""

from typing import Optional


class ChainscopeError(Exception):
    """Base class for all chainscope errors."""

    exit_code = 1


class DomainError(ChainscopeError, ValueError):
    """Invalid point, symbol, parameter or path."""


class ResourceCapError(ChainscopeError):
    """A configured resource cap would be exceeded."""

    exit_code = 3

    def __init__(self, message: str, partial_depth: Optional[int] = None):
        super().__init__(message)
        self.partial_depth = partial_depth


class HypothesisError(ChainscopeError):
    """A theorem hypothesis does not hold for the given input."""

    exit_code = 2


class PreconditionError(ChainscopeError):
    """An operation was refused because its precondition failed."""

    exit_code = 2


class NotTransitiveError(PreconditionError):
    """Raised by the epsilon scan when a level is not chain transitive."""

    def __init__(self, message: str, level: int):
        super().__init__(message)
        self.level = level


class DiscretizationBreakdown(ChainscopeError):
    """Periods or cyclic classes failed to refine across scan levels."""

    exit_code = 2

    def __init__(self, message: str, level: int):
        super().__init__(message)
        self.level = level


class ConfigError(ChainscopeError, ValueError):
    """Malformed configuration file."""

    def __init__(self, message: str, line: Optional[int] = None, key: Optional[str] = None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if key is not None:
            location.append(f"key '{key}'")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")
        self.line = line
        self.key = key
