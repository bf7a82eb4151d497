"""Angles as exact rational multiples of π, and parsing of ``"k*pi/m"`` strings."""

from __future__ import annotations

import math
import re
from fractions import Fraction

TWO_PI = 2 * math.pi

_PI_FORM = re.compile(
    r"""^\s*(?P<sign>[+-])?\s*
        (?:(?P<num>\d+)\s*\*?\s*)?
        pi
        (?:\s*/\s*(?P<den>\d+))?\s*$""",
    re.VERBOSE | re.IGNORECASE,
)


def pi_fraction(text: str) -> Fraction | None:
    """``"2*pi/3"`` → Fraction(2, 3); None when ``text`` is not of the π form."""
    m = _PI_FORM.match(text)
    if not m:
        return None
    num = int(m.group("num") or 1)
    den = int(m.group("den") or 1)
    if den == 0:
        raise ValueError(f"zero denominator in angle {text!r}")
    frac = Fraction(num, den)
    return -frac if m.group("sign") == "-" else frac


def parse_angle(value) -> float:
    """Radians from a number, a decimal string, or a ``"k*pi/m"`` string."""
    if isinstance(value, bool):
        raise ValueError("booleans are not angles")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        frac = pi_fraction(value)
        if frac is not None:
            return float(frac) * math.pi
        try:
            return float(value)
        except ValueError:
            raise ValueError(f"cannot parse angle {value!r}") from None
    raise ValueError(f"cannot parse angle {value!r}")


def canonical(angle: float) -> float:
    """Reduce to [0, 2π)."""
    a = math.fmod(angle, TWO_PI)
    if a < 0:
        a += TWO_PI
    return 0.0 if a >= TWO_PI else a


def circular_distance(a: float, b: float) -> float:
    d = abs(canonical(a) - canonical(b))
    return min(d, TWO_PI - d)


def format_pi(frac: Fraction) -> str:
    if frac == 0:
        return "0"
    num = "" if abs(frac.numerator) == 1 else f"{abs(frac.numerator)}*"
    sign = "-" if frac < 0 else ""
    den = "" if frac.denominator == 1 else f"/{frac.denominator}"
    return f"{sign}{num}pi{den}"
