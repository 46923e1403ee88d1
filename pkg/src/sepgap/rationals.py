"""Exact rational parsing/formatting on top of the stdlib Fraction type.

Every numeric quantity in this package (point weights, costs, dual walk
weights, rescaling constants, bounds) is a ``fractions.Fraction``.  Fraction
already guarantees lowest terms and a positive denominator, which is the
representation the rest of the pipeline relies on; nothing here ever touches
floating point.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["Rational", "parse_rational", "format_rational"]

Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` or a plain integer string into a Fraction.

    Raises ValueError on anything else (floats and scientific notation are
    rejected on purpose: the pipeline is exact end to end).
    """
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational literal: {text!r}")
    if "/" in text:
        num_str, _, den_str = text.partition("/")
        num, den = int(num_str), int(den_str)
        if den == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Fraction(num, den)
    return Fraction(int(text))


def format_rational(value: Fraction) -> str:
    """Render a Fraction as ``num/den`` (or ``num`` when integral).

    ``parse_rational(format_rational(q)) == q`` holds for every Fraction,
    and the output is canonical: lowest terms, sign on the numerator.
    """
    return str(Fraction(value))
