"""Exact rational helpers shared by serializers and parsers."""

from fractions import Fraction
from typing import Any

from src.utils.errors import ValidationError


def parse_rational(value: Any) -> Fraction:
    """Parse an int, a Fraction or a "num/den" string into a Fraction.

    Args:
        value: Value to parse

    Returns:
        Fraction: The parsed rational

    Raises:
        ValidationError: If the value is not a rational literal (floats are
            rejected so that no rounding enters a computation)
    """
    if isinstance(value, bool):
        raise ValidationError(f"Not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return Fraction(int(num), int(den))
            return Fraction(int(text))
        except (ValueError, ZeroDivisionError) as e:
            raise ValidationError(f"Not a rational: {value!r}") from e
    raise ValidationError(f"Not a rational: {value!r}")


def format_rational(value: Fraction | int) -> str:
    """Render a rational as "num/den", or "num" when integral."""
    return str(Fraction(value))


def parse_rational_list(text: str) -> list[Fraction]:
    """Parse a comma-separated list such as "1,3/2,5"."""
    return [parse_rational(part) for part in text.split(",") if part.strip()]
