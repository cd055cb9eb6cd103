"""Canonical number formatting.

Every number that reaches a serialized artifact (scene dumps, SVG, label
text) goes through :func:`fmt_number` so output is byte-stable across runs
and platforms: exactly six decimal places, half-up rounding, no negative
zero.
"""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal

_SIX_PLACES = Decimal("0.000001")


def fmt_number(value: float) -> str:
    quantized = Decimal(value).quantize(_SIX_PLACES, rounding=ROUND_HALF_UP)
    if quantized == 0:
        quantized = abs(quantized)  # "-0.000000" would break byte equality
    return f"{quantized:f}"
