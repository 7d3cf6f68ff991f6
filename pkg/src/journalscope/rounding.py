"""Half-up decimal rounding used by every percentage and growth figure."""

from __future__ import annotations

from decimal import Decimal, ROUND_HALF_UP
from fractions import Fraction


def round_half_up(value: float | Fraction | Decimal, ndigits: int = 2) -> float:
    """Round to `ndigits` decimals with ties going away from zero.

    Exact inputs (Fraction, Decimal, int) are rounded without a float
    detour so quotients of large integers land on the correct side of a
    tie. Floats are rounded from their shortest repr.
    """
    if isinstance(value, Fraction):
        dec = Decimal(value.numerator) / Decimal(value.denominator)
    elif isinstance(value, Decimal):
        dec = value
    else:
        dec = Decimal(repr(value))
    quantum = Decimal(1).scaleb(-ndigits)
    return float(dec.quantize(quantum, rounding=ROUND_HALF_UP))


def percent(numerator: int, denominator: int, ndigits: int = 2) -> float:
    """100 * numerator / denominator, rounded half-up. Denominator != 0."""
    return round_half_up(Fraction(100 * numerator, denominator), ndigits)
