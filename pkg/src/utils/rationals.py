"""Exact-rational parsing and serialization.

Rationals travel through JSON and the command line as ``"p/q"`` strings (or
plain integers). Floats are accepted only when they are exactly representable
as short decimals, e.g. ``"0.5"``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

RationalLike = int | str | Fraction


def parse_rational(value: RationalLike | float) -> Fraction:
    """Return ``value`` as a Fraction.

    Raises:
        ValueError: if the value cannot be read as an exact rational.
    """
    if isinstance(value, bool):
        raise ValueError(f"Not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # Round-trip through the shortest repr so 0.1 becomes 1/10.
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("Empty rational")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Not a rational: {value!r}") from e
    raise ValueError(f"Not a rational: {value!r}")


def parse_rational_list(value: str | Iterable[RationalLike]) -> tuple[Fraction, ...]:
    """Parse ``"6,7,-12"`` or an iterable of rationals into a tuple."""
    if isinstance(value, str):
        items = [part for part in value.split(",") if part.strip()]
    else:
        items = list(value)
    return tuple(parse_rational(item) for item in items)


def format_rational(value: Fraction | int) -> str:
    """Serialize a rational as ``"p/q"`` (or ``"p"`` for integers)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_rational_list(values: Sequence[Fraction]) -> list[str]:
    return [format_rational(v) for v in values]
