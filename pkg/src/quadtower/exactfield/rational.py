"""Square classes and small number theory over the rationals."""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

RationalLike = Union[int, Fraction]


def as_fraction(x: RationalLike | str) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation of ``|n|`` by trial division."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def _int_fourth_root(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(isqrt(n))
    return r if r**4 == n else None


def rational_sqrt(x: RationalLike) -> Fraction | None:
    x = as_fraction(x)
    if x < 0:
        return None
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def is_rational_square(x: RationalLike) -> bool:
    return rational_sqrt(x) is not None


def is_fourth_power(x: RationalLike) -> bool:
    x = as_fraction(x)
    if x <= 0:
        return False
    return _int_fourth_root(x.numerator) is not None and _int_fourth_root(x.denominator) is not None


def squarefree_part(x: RationalLike) -> int:
    """The squarefree integer representing the class of ``x`` in Q*/Q*^2."""
    x = as_fraction(x)
    if x == 0:
        raise ValueError("0 has no square class")
    sign = -1 if x < 0 else 1
    out = 1
    for p, e in factorize(x.numerator * x.denominator).items():
        if e % 2:
            out *= p
    return sign * out


def square_class_labels(x: RationalLike) -> frozenset[str]:
    """Labels of the class of ``x`` over the basis {[-1]} U {[p] : p prime}."""
    s = squarefree_part(x)
    labels = {f"p:{p}" for p in factorize(s)} if abs(s) > 1 else set()
    if s < 0:
        labels.add("sign:-1")
    return frozenset(labels)


def is_sum_of_two_squares(a: RationalLike) -> bool:
    """Whether ``a = x^2 + y^2`` with rational x, y (a nonzero)."""
    a = as_fraction(a)
    if a == 0:
        raise ValueError("a must be nonzero")
    if a < 0:
        return False
    for p, e in factorize(a.numerator * a.denominator).items():
        if p % 4 == 3 and e % 2:
            return False
    return True
