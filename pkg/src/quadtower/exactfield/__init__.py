"""Exact base fields: Q, towers of quadratic extensions of Q, and odd finite fields."""
from __future__ import annotations

from fractions import Fraction

from .finite import GF, FiniteFieldElement
from .multiquad import (
    RATIONALS,
    Automorphism,
    MultiquadField,
    QElement,
    QuadTower,
    canonical_root,
    galois_orbit,
    norm_to_subfield,
    tower,
)
from .rational import (
    as_fraction,
    factorize,
    is_fourth_power,
    is_rational_square,
    is_sum_of_two_squares,
    rational_sqrt,
    square_class_labels,
    squarefree_part,
)

__all__ = [
    "GF", "FiniteFieldElement", "RATIONALS", "Automorphism", "MultiquadField", "QElement",
    "QuadTower", "tower", "galois_orbit", "norm_to_subfield", "is_square", "sqrt_exact",
    "is_sum_of_two_squares", "power2_irreducible", "squarefree_part", "square_class_labels",
    "factorize", "as_fraction", "parse_rational",
]


def _check_nonzero(x) -> None:
    zero = (x == 0) if not isinstance(x, QElement) else x.is_zero()
    if zero:
        raise ValueError("zero has no square class")


def is_square(x) -> bool:
    """Whether ``x`` is a square in its own field (x nonzero)."""
    _check_nonzero(x)
    if isinstance(x, FiniteFieldElement):
        return x.is_square()
    if isinstance(x, QElement):
        return x.field._sqrt(x.coords) is not None
    return is_rational_square(x)


def sqrt_exact(x):
    """A canonical square root of ``x`` in its field, or None.

    Over Q and quadratic towers the root with positive first nonzero
    coordinate is returned; over F_q see ``FiniteFieldElement.sqrt``.
    """
    _check_nonzero(x)
    if isinstance(x, FiniteFieldElement):
        return x.sqrt()
    if isinstance(x, QElement):
        r = x.field._sqrt(x.coords)
        return None if r is None else QElement(x.field, canonical_root(r))
    return rational_sqrt(x)


def power2_irreducible(a, n: int) -> bool:
    """Whether ``X^(2^n) - a`` is irreducible over the field of ``a``.

    For exponent a power of two the criterion is: ``a`` is not a square, and
    when ``n >= 2`` also ``a`` is not of the form ``-4 c^4``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if is_square(a):
        return False
    if n == 1:
        return True
    if isinstance(a, FiniteFieldElement):
        return not (-a / 4).is_fourth_power()
    if isinstance(a, QElement):
        raise TypeError("power2_irreducible supports Q and F_q")
    return not is_fourth_power(-as_fraction(a) / 4)


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())
