"""
Exact Arithmetic Helpers
Integer logarithms and lossless rendering of big integers and rationals.
"""

from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Union

Number = Union[int, Fraction]


def ceil_log2(x: int) -> int:
    """
    Exact ceil(log2(x)) for a positive integer, computed as the bit length of x - 1.

    Args:
        x: Positive integer

    Returns:
        Number of qubits needed to hold an x-dimensional register
    """
    if x < 1:
        raise ValueError(f"ceil_log2 needs a positive integer, got {x}")
    return (x - 1).bit_length()


def format_rational(value: Number) -> str:
    """Render an exact rational as 'p/q' (or 'p' when integral)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Number, digits: int = 12) -> str:
    """
    Render an exact rational with a fixed number of significant digits.

    Args:
        value: Integer or Fraction
        digits: Significant digits

    Returns:
        Decimal string using '.' as separator
    """
    value = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = digits
        rendered = Decimal(value.numerator) / Decimal(value.denominator)
    return format(rendered, f".{digits}g")
