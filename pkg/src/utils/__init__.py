"""Utility helpers shared by the horocone packages.

This package groups small, focused helpers:
- rationals: exact-rational parsing and "p/q" serialization
- errors: exception types shared across modules
- parallel: seed derivation and partitioned process-pool execution
- types: shared TypedDict contracts for reports
"""

from .errors import EnumerationLimitError, UnsupportedError
from .rationals import format_rational, parse_rational, parse_rational_list

__all__ = [
    "EnumerationLimitError",
    "UnsupportedError",
    "format_rational",
    "parse_rational",
    "parse_rational_list",
]
