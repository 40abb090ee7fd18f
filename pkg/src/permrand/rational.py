"""Exact rationals.

``fractions.Fraction`` already keeps values in lowest terms with a positive
denominator, so it is used directly. Only the text format lives here:
rationals always travel as ``"num/den"``, integers included.
"""
from fractions import Fraction

__all__ = ["Fraction", "as_fraction", "format_q", "parse_q"]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings; refuse floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_q(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_q(q) -> str:
    q = as_fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_q(text: str) -> Fraction:
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"decimal notation is not accepted: {text!r}")
    return Fraction(text)
