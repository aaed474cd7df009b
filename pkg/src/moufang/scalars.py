"""Scalar field elements: exact rationals (gmpy2.mpq) or binary floats.

Everything downstream is written against ``+ - * /`` only, so the same code
runs on either kind of scalar and on :class:`moufang.jets.Jet` values.
"""

from __future__ import annotations

import re
from fractions import Fraction

from gmpy2 import mpq

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown scalar mode {mode!r}; expected one of {MODES}")
    return mode


def parse_rational(text: str):
    """Parse ``"p"`` or ``"p/q"`` into an exact rational; decimals are rejected."""
    if not isinstance(text, str):
        raise ValueError(f"rational must be given as a string, got {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a decimal-free rational: {text!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return mpq(num, den)


def to_scalar(value, mode: str = EXACT):
    """Coerce an int, Fraction, mpq, float or ``"p/q"`` string into ``mode``."""
    check_mode(mode)
    if isinstance(value, str):
        value = parse_rational(value)
    if mode == FLOAT:
        return float(value)
    if isinstance(value, float):
        # floats are only accepted when they are exactly representable integers
        if not value.is_integer():
            raise ValueError(f"refusing to convert inexact float {value!r} to an exact rational")
        return mpq(int(value))
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    return mpq(value)


def rational(p: int, q: int = 1, mode: str = EXACT):
    """The constant p/q in the requested mode (used for 1/3, 1/6, ...)."""
    return mpq(p, q) if check_mode(mode) == EXACT else p / q


def mode_of(value) -> str:
    """Infer the scalar mode of a scalar, a Jet, or a (nested) sequence of them."""
    if isinstance(value, (list, tuple)):
        for item in value:
            mode = mode_of(item)
            if mode is not None:
                return mode
        return None
    coeffs = getattr(value, "coeffs", None)
    if coeffs is not None:
        return mode_of(list(coeffs.values()))
    if isinstance(value, float):
        return FLOAT
    if isinstance(value, (int, type(mpq(0)))):
        return EXACT
    return None


def format_scalar(value) -> str:
    """Serialize a scalar: exact values as ``"p/q"`` (or ``"p"``), floats via repr."""
    if isinstance(value, float):
        return repr(value)
    value = mpq(value)
    return str(value)


def abs_max(values) -> object:
    """Largest absolute value in an iterable of scalars (0 for an empty one)."""
    best = 0
    for v in values:
        a = abs(v)
        if a > best:
            best = a
    return best
