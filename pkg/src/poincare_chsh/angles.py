"""Parsing and pretty-printing of angles in radians."""
from __future__ import annotations

import re
from fractions import Fraction

import numpy as np

from .errors import ParseError

_PI_FRACTION = re.compile(
    r"^\s*([+-])?\s*(\d+(?:\.\d*)?)?\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*$", re.IGNORECASE
)


def parse_angle(text) -> float:
    """Parse a decimal or a pi fraction such as ``pi/4``, ``-3pi/8`` or ``2*pi``."""
    if isinstance(text, (int, float)):
        return float(text)
    s = str(text).strip()
    m = _PI_FRACTION.match(s)
    if m:
        sign = -1.0 if m.group(1) == "-" else 1.0
        num = float(m.group(2)) if m.group(2) else 1.0
        den = float(m.group(3)) if m.group(3) else 1.0
        if den == 0:
            raise ParseError(f"zero denominator in angle {text!r}")
        return sign * num * np.pi / den
    try:
        value = float(s)
    except ValueError:
        raise ParseError(f"cannot parse angle {text!r}") from None
    if not np.isfinite(value):
        raise ParseError(f"angle must be finite: {text!r}")
    return value


def format_angle(x: float, denominator: int = 24, tol: float = 1e-9) -> str:
    """Render exact multiples of pi/24 as pi fractions, anything else as a decimal."""
    k = x * denominator / np.pi
    if abs(k - round(k)) < tol:
        f = Fraction(int(round(k)), denominator)
        if f == 0:
            return "0"
        num = "" if abs(f.numerator) == 1 else str(abs(f.numerator))
        sign = "-" if f < 0 else ""
        den = "" if f.denominator == 1 else f"/{f.denominator}"
        return f"{sign}{num}pi{den}"
    return f"{x:.10g}"
