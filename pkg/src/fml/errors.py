"""Shared exception types."""


class ConfigError(ValueError):
    """Raised when a config or data file is malformed (fail-closed parsing)."""


class ResourceLimitError(RuntimeError):
    """Raised when a requested computation would exceed the enumeration/memory budget."""
