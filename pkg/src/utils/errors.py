"""Exception types shared across horocone modules."""


class UnsupportedError(ValueError):
    """Raised for inputs outside what an operation handles (e.g. non-split data)."""


class EnumerationLimitError(ValueError):
    """Raised when a bounded enumeration would exceed its candidate budget."""
