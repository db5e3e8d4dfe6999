"""Finite fields F_q of odd characteristic, q = p**e.

Elements are polynomials over F_p modulo a fixed monic primitive polynomial:
the first one met when scanning coefficient tuples in lexicographic order.
Because the class of ``x`` generates F_q*, it is a nonsquare and serves as
the canonical representative of the nontrivial square class.
"""
from __future__ import annotations

from functools import cached_property, lru_cache
from itertools import product
from math import gcd
from typing import Iterator, Sequence

from .rational import factorize, is_prime

Poly = tuple  # coefficients low -> high


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _trim(a)
    return a


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: Sequence[int], n: int, m: Sequence[int], p: int) -> list[int]:
    out: list[int] = [1]
    base = _pmod(base, m, p)
    while n:
        if n & 1:
            out = _pmod(_pmul(out, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        n >>= 1
    return out


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    n = len(f) - 1
    if n < 1:
        return False
    x = [0, 1]
    for r in factorize(n) if n > 1 else {}:
        h = _ppowmod(x, p ** (n // r), f, p)
        if len(_pgcd(f, _psub(h, x, p), p)) != 1:
            return False
    return _pmod(_psub(_ppowmod(x, p**n, f, p), x, p), f, p) == []


def _is_primitive(f: Sequence[int], p: int) -> bool:
    n = len(f) - 1
    order = p**n - 1
    x = [0, 1]
    return all(_ppowmod(x, order // r, f, p) != [1] for r in factorize(order)) if order > 1 else True


@lru_cache(maxsize=None)
def primitive_modulus(p: int, e: int) -> Poly:
    """First monic primitive polynomial of degree ``e`` over F_p (lexicographic on high->low coefficients)."""
    for tail in product(range(p), repeat=e):
        f = list(tail[::-1]) + [1]
        if f[0] == 0:
            continue
        if is_irreducible(f, p) and _is_primitive(f, p):
            return tuple(f)
    raise RuntimeError(f"no primitive polynomial of degree {e} over F_{p}")


class GF:
    """The finite field with ``p**e`` elements (p odd)."""

    _cache: dict[tuple[int, int], GF] = {}

    def __new__(cls, p: int, e: int = 1):
        key = (p, e)
        if key not in cls._cache:
            if p == 2 or not is_prime(p):
                raise ValueError(f"characteristic must be an odd prime, got {p}")
            if e < 1:
                raise ValueError("extension degree must be >= 1")
            obj = super().__new__(cls)
            obj.p, obj.e = p, e
            obj.q = p**e
            obj.modulus = primitive_modulus(p, e)
            cls._cache[key] = obj
        return cls._cache[key]

    @classmethod
    def of_order(cls, q: int) -> GF:
        f = factorize(q)
        if len(f) != 1:
            raise ValueError(f"{q} is not a prime power")
        (p, e), = f.items()
        return cls(p, e)

    def __repr__(self) -> str:
        return f"F{self.q}"

    def __reduce__(self):
        return (GF, (self.p, self.e))

    def __call__(self, value: int | Sequence[int] | FiniteFieldElement) -> FiniteFieldElement:
        if isinstance(value, FiniteFieldElement):
            if value.field is not self:
                raise TypeError(f"{value} is not in {self}")
            return value
        if isinstance(value, int):
            coeffs = [value % self.p]
        else:
            coeffs = [c % self.p for c in value]
        return FiniteFieldElement(self, tuple(_pmod(_trim(coeffs), self.modulus, self.p)))

    @cached_property
    def gen(self) -> FiniteFieldElement:
        """The class of x: a generator of the multiplicative group."""
        return self([0, 1]) if self.e > 1 else self(-self.modulus[0])

    def zero(self) -> FiniteFieldElement:
        return self(0)

    def one(self) -> FiniteFieldElement:
        return self(1)

    def elements(self) -> Iterator[FiniteFieldElement]:
        for c in product(range(self.p), repeat=self.e):
            yield self(list(c))

    def nonzero(self) -> Iterator[FiniteFieldElement]:
        for x in self.elements():
            if x:
                yield x

    def nonsquare(self) -> FiniteFieldElement:
        return self.gen

    def frobenius(self, x: FiniteFieldElement, k: int = 1) -> FiniteFieldElement:
        """``x -> x^(p^k)``."""
        return x ** (self.p**k)


class FiniteFieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs: Poly):
        self.field = field
        self.coeffs = coeffs

    def _c(self, y) -> Poly:
        if isinstance(y, FiniteFieldElement):
            if y.field is not self.field:
                raise TypeError("elements of different fields")
            return y.coeffs
        if isinstance(y, int):
            return self.field(y).coeffs
        return NotImplemented

    def __add__(self, y):
        c = self._c(y)
        if c is NotImplemented:
            return c
        n = max(len(c), len(self.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = tuple(c) + (0,) * (n - len(c))
        return FiniteFieldElement(self.field, tuple(_trim([(x + z) % self.field.p for x, z in zip(a, b)])))

    __radd__ = __add__

    def __neg__(self):
        return FiniteFieldElement(self.field, tuple((-x) % self.field.p for x in self.coeffs))

    def __sub__(self, y):
        c = self._c(y)
        if c is NotImplemented:
            return c
        return self + (-FiniteFieldElement(self.field, tuple(c)))

    def __rsub__(self, y):
        return (-self) + y

    def __mul__(self, y):
        c = self._c(y)
        if c is NotImplemented:
            return c
        F = self.field
        return FiniteFieldElement(F, tuple(_pmod(_pmul(self.coeffs, c, F.p), F.modulus, F.p)))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        F = self.field
        if n < 0:
            return self.inverse() ** (-n)
        return FiniteFieldElement(F, tuple(_ppowmod(self.coeffs, n, F.modulus, F.p)))

    def inverse(self) -> FiniteFieldElement:
        if not self:
            raise ZeroDivisionError("inverse of 0")
        return self ** (self.field.q - 2)

    def __truediv__(self, y):
        c = self._c(y)
        if c is NotImplemented:
            return c
        return self * FiniteFieldElement(self.field, tuple(c)).inverse()

    def __rtruediv__(self, y):
        return self.field(y) * self.inverse()

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, y) -> bool:
        if isinstance(y, int):
            return self.coeffs == self.field(y).coeffs
        return isinstance(y, FiniteFieldElement) and y.field is self.field and y.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash((self.field.q, self.coeffs))

    def sort_key(self) -> tuple:
        return (len(self.coeffs), self.coeffs[::-1])

    def __lt__(self, y: FiniteFieldElement) -> bool:
        return self.sort_key() < y.sort_key()

    def text(self) -> str:
        if self.field.e == 1:
            return str(self.coeffs[0] if self.coeffs else 0)
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(str(c) if not mon else (mon if c == 1 else f"{c}*{mon}"))
        return "+".join(reversed(terms)) if terms else "0"

    def __repr__(self) -> str:
        return f"{self.text()}@{self.field}"

    __str__ = text

    # ---------------------------------------------------------- square roots
    def is_square(self) -> bool:
        if not self:
            raise ValueError("zero has no square class")
        return self ** ((self.field.q - 1) // 2) == 1

    def sqrt(self) -> FiniteFieldElement | None:
        """Tonelli-Shanks; the root returned is the one that is itself a square
        (even discrete logarithm), ties broken by the smaller coefficient vector."""
        if not self.is_square():
            return None
        F = self.field
        q1 = F.q - 1
        s, t = 0, q1
        while t % 2 == 0:
            s, t = s + 1, t // 2
        z = F.nonsquare() ** t
        m, c, r, tt = s, z, self ** ((t + 1) // 2), self**t
        while tt != 1:
            i, t2 = 0, tt
            while t2 != 1:
                t2, i = t2 * t2, i + 1
            b = c ** (1 << (m - i - 1))
            m, c = i, b * b
            r, tt = r * b, tt * b * b
        cands = [r, -r]
        sq = [y for y in cands if y.is_square()]
        pool = sq if sq else cands
        return min(pool)

    def is_fourth_power(self) -> bool:
        if not self:
            return False
        q1 = self.field.q - 1
        return self ** (q1 // gcd(4, q1)) == 1
