"""Shared exception types."""


class CapExceededError(ValueError):
    """A desk-scale search or size cap would be exceeded."""
