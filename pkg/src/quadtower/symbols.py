"""Hilbert symbols over Q, cyclic/dihedral embedding predicates, finite-field Witt data."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from itertools import combinations_with_replacement
from typing import Iterable, Union

from .exactfield import GF, FiniteFieldElement, as_fraction, factorize, is_sum_of_two_squares
from .exactfield.rational import is_rational_square, squarefree_part


@dataclass(frozen=True)
class Place:
    """The real place (``p is None``) or the p-adic place."""

    p: int | None = None

    @classmethod
    def real(cls) -> Place:
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> Place:
        text = text.strip().lower()
        if text in ("real", "inf", "infinity", "r"):
            return cls(None)
        p = int(text)
        if factorize(p) != {p: 1}:
            raise ValueError(f"{p} is not prime")
        return cls(p)

    @property
    def is_real(self) -> bool:
        return self.p is None

    def __str__(self) -> str:
        return "real" if self.p is None else str(self.p)

    def sort_key(self) -> int:
        return 0 if self.p is None else self.p


REAL = Place.real()


def _valuation(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hilbert_symbol(a, b, v: Place | int | None) -> int:
    """(a, b)_v: +1 iff z^2 = a x^2 + b y^2 has a nonzero solution over Q_v."""
    a, b = as_fraction(a), as_fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if not isinstance(v, Place):
        v = Place(v)
    if v.is_real:
        return -1 if a < 0 and b < 0 else 1
    p = v.p
    # symbols only see square classes: a*den^2 is an integer in the class of a
    A = a.numerator * a.denominator
    B = b.numerator * b.denominator
    alpha, u = _valuation(A, p)
    beta, w = _valuation(B, p)
    if p != 2:
        sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
        return sign * _legendre(u, p) ** (beta % 2) * _legendre(w, p) ** (alpha % 2)

    def eps(x: int) -> int:
        return ((x - 1) // 2) % 2

    def omega(x: int) -> int:
        return ((x * x - 1) // 8) % 2

    e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
    return -1 if e % 2 else 1


def relevant_places(*xs) -> list[Place]:
    """The real place, 2, and every odd prime dividing a numerator or denominator."""
    primes = {2}
    for x in xs:
        x = as_fraction(x)
        for n in (x.numerator, x.denominator):
            if abs(n) > 1:
                primes |= set(factorize(n))
    return [REAL] + [Place(p) for p in sorted(primes)]


@dataclass
class ProductCheck:
    a: Fraction
    b: Fraction
    symbols: list  # (Place, int)

    @property
    def negative_places(self) -> list[Place]:
        return [v for v, s in self.symbols if s == -1]

    @property
    def product(self) -> int:
        return -1 if len(self.negative_places) % 2 else 1

    def to_json(self) -> dict:
        return {
            "a": str(self.a),
            "b": str(self.b),
            "places": [{"place": str(v), "symbol": s} for v, s in self.symbols],
        }


def global_product_check(a, b) -> ProductCheck:
    """Symbols at every place where one can be -1; the number of -1's must be even."""
    a, b = as_fraction(a), as_fraction(b)
    out = ProductCheck(a, b, [(v, hilbert_symbol(a, b, v)) for v in relevant_places(a, b)])
    if out.product != 1:
        raise ArithmeticError(f"product formula violated for ({a}, {b}): {out.negative_places}")
    return out


def splits_everywhere(a, b) -> bool:
    return all(hilbert_symbol(a, b, v) == 1 for v in relevant_places(a, b))


def embeds_in_c4(a) -> bool:
    """Whether Q(sqrt a) lies in a cyclic quartic extension of Q.

    Decided by a being a sum of two rational squares, i.e. (a, -1)_v = 1
    at every place.
    """
    a = as_fraction(a)
    if a == 0 or is_rational_square(a):
        raise ValueError(f"{a} does not define a quadratic extension")
    return is_sum_of_two_squares(a)


def embeds_in_d4(a, b) -> bool:
    """Whether Q(sqrt a, sqrt b) lies in a dihedral octic field that is cyclic over Q(sqrt ab).

    Decided by (a, b)_v = 1 at every place.  When [a] = [b] the pair is
    degenerate and the answer is (a, a) = (a, -1), the cyclic-quartic
    criterion for Q(sqrt a).
    """
    a, b = as_fraction(a), as_fraction(b)
    for x in (a, b):
        if x == 0 or is_rational_square(x):
            raise ValueError(f"{x} does not define a quadratic extension")
    return splits_everywhere(a, b)


# --------------------------------------------------------------------------- quadratic forms
Entry = Union[Fraction, FiniteFieldElement]


@dataclass(frozen=True)
class DiagonalForm:
    entries: tuple

    def __init__(self, entries: Iterable):
        ents = tuple(e if isinstance(e, FiniteFieldElement) else as_fraction(e) for e in entries)
        if any(e == 0 for e in ents):
            raise ValueError("diagonal entries must be nonzero")
        object.__setattr__(self, "entries", ents)

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def __add__(self, other: DiagonalForm) -> DiagonalForm:
        return DiagonalForm(self.entries + other.entries)

    def discriminant(self):
        d = (-1) ** (self.dimension * (self.dimension - 1) // 2)
        out = d
        for e in self.entries:
            out = out * e
        return out

    def __str__(self) -> str:
        return "<" + ", ".join(str(e) for e in self.entries) + ">"


@dataclass(frozen=True)
class WittInvariants:
    dimension_mod_2: int
    discriminant_class: int
    hasse: tuple  # ((Place, symbol), ...)

    def hasse_at(self, v: Place) -> int:
        return dict(self.hasse).get(v, 1)


def witt_invariants(form: DiagonalForm) -> WittInvariants:
    """Dimension parity, signed discriminant class and Hasse symbols of a rational form."""
    ents = form.entries
    if any(isinstance(e, FiniteFieldElement) for e in ents):
        raise TypeError("Hasse symbols are computed for rational forms")
    places = relevant_places(*ents) if ents else [REAL]
    hasse = []
    for v in places:
        s = 1
        for i in range(len(ents)):
            for j in range(i + 1, len(ents)):
                s *= hilbert_symbol(ents[i], ents[j], v)
        hasse.append((v, s))
    disc = squarefree_part(form.discriminant()) if ents else 1
    return WittInvariants(form.dimension % 2, disc, tuple(hasse))


# --------------------------------------------------------------------------- Witt ring of F_q
@dataclass
class WittTable:
    q: int
    size: int
    exponent: int
    classes: list  # anisotropic representatives, as tuples of square-class reps
    orders: dict  # representative -> additive order

    def lines(self) -> list[str]:
        out = [f"W(F_{self.q}): size {self.size}, additive exponent {self.exponent}"]
        for c in self.classes:
            out.append(f"  <{', '.join(map(str, c))}>  order {self.orders[c]}")
        return out


class _FiniteWitt:
    """Exhaustive Witt-ring bookkeeping over F_q for forms with square-class-rep entries."""

    def __init__(self, F: GF):
        self.F = F
        self.elems = list(F.nonzero())
        self.squares = {x * x for x in self.elems}
        self.reps = (F.one(), F.nonsquare())

    def rep(self, x: FiniteFieldElement) -> FiniteFieldElement:
        return self.reps[0] if x in self.squares else self.reps[1]

    @lru_cache(maxsize=None)
    def counts(self, form: tuple) -> tuple:
        """Representation numbers #{v : f(v) = c} for every c (the zero vector included)."""
        F = self.F
        all_elems = [F.zero()] + self.elems
        sq = Counter(x * x for x in all_elems)
        c: Counter = Counter({F.zero(): 1})
        for a in form:
            nxt: Counter = Counter()
            for val, n in c.items():
                for s, m in sq.items():
                    nxt[val + a * s] += n * m
            c = nxt
        return tuple(sorted(((x.sort_key(), n) for x, n in c.items())))

    def isotropic(self, form: tuple) -> bool:
        zero_count = dict(self.counts(form)).get(self.F.zero().sort_key(), 0)
        return zero_count > 1

    def canon(self, form: Iterable) -> tuple:
        return tuple(sorted((self.rep(a) for a in form), key=lambda x: x.sort_key()))

    def isometric(self, f: tuple, g: tuple) -> bool:
        return len(f) == len(g) and self.counts(f) == self.counts(g)

    @lru_cache(maxsize=None)
    def anisotropic_part(self, form: tuple) -> tuple:
        """Split off hyperbolic planes by exhaustive search over rediagonalised pairs.

        From a state, any pair of entries may be replaced by an isometric pair
        (equal representation numbers), and an isotropic pair (a hyperbolic
        plane) may be dropped.  The smallest reachable state is returned.
        """
        form = self.canon(form)
        seen = {form}
        frontier = [form]
        best = form
        while frontier:
            nxt = []
            for f in frontier:
                if len(f) < len(best):
                    best = f
                for i in range(len(f)):
                    for j in range(i + 1, len(f)):
                        rest = f[:i] + f[i + 1 : j] + f[j + 1 :]
                        pair = (f[i], f[j])
                        cands = []
                        if self.isotropic(pair):
                            cands.append(self.canon(rest))
                        for x, y in combinations_with_replacement(self.reps, 2):
                            if self.isometric(self.canon(pair), (x, y)):
                                cands.append(self.canon(rest + (x, y)))
                        for g in cands:
                            if g not in seen:
                                seen.add(g)
                                nxt.append(g)
            frontier = nxt
        return best

    def add(self, f: tuple, g: tuple) -> tuple:
        return self.anisotropic_part(self.canon(f + g))


def witt_table_finite_field(q: int) -> WittTable:
    """W(F_q) by brute force over diagonal forms of dimension <= 2."""
    if q % 2 == 0:
        raise ValueError("q must be odd")
    if q > 10**4:
        raise ValueError("q capped at 10^4")
    F = GF.of_order(q)
    W = _FiniteWitt(F)
    forms = [()] + [(a,) for a in W.reps] + [W.canon(p) for p in combinations_with_replacement(W.reps, 2)]
    # isometry classes by representation numbers; keep anisotropic ones
    classes: list[tuple] = []
    for f in forms:
        if len(f) >= 2 and W.isotropic(f):
            continue
        if not any(W.isometric(f, g) for g in classes):
            classes.append(f)
    # every 3-dimensional form is isotropic, so dimension <= 2 exhausts W(F_q)
    for f in combinations_with_replacement(W.reps, 3):
        if not W.isotropic(W.canon(f)):
            raise ArithmeticError(f"anisotropic ternary form {f} over F_{q}")

    def same(f: tuple, g: tuple) -> bool:
        return W.isometric(W.anisotropic_part(f), W.anisotropic_part(g))

    orders = {}
    for c in classes:
        n, acc = 1, c
        while not same(acc, ()):
            acc = W.add(acc, c)
            n += 1
            if n > 64:
                raise ArithmeticError("runaway Witt order")
        orders[c] = n
    exponent = lcm(*orders.values())
    return WittTable(q, len(classes), exponent, classes, orders)
