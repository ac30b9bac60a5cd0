"""Canonical float formatting for serialized artifacts.

All floats written to JSON/CSV go through :func:`fmt_float` so identical
inputs produce byte-identical files: 17 significant digits round-trip any
IEEE double, and negative zero is normalized away.
"""

from __future__ import annotations


def fmt_float(value: float) -> str:
    v = float(value)
    if v == 0.0:
        v = 0.0  # collapse -0.0
    return format(v, ".17g")


def parse_float(text) -> float:
    return float(text)
