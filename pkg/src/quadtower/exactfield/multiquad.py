"""Exact arithmetic in towers of quadratic extensions of Q.

A tower is ``Q = K_0 < K_1 < ... < K_d`` with ``K_{j+1} = K_j(r_j)`` and
``r_j^2 = c_j`` for a nonsquare ``c_j`` of ``K_j``.  An element of ``K_d`` is
stored as ``2**d`` rationals over the monomials ``prod_{i in S} r_i``; the
monomial for a subset S sits at the index whose binary digits are S.  Thus
the lower half of the coordinates is the ``K_{d-1}`` part ``u`` and the upper
half the coefficient ``v`` of ``r_{d-1}``.

``MultiquadField`` is the special case where every ``c_j`` is a rational
number, i.e. ``Q(sqrt a_1, ..., sqrt a_d)``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

from ..sqclass import SquareClassSpace, SquareClassVector, insert_and_test_independent
from .rational import RationalLike, as_fraction, factorize, rational_sqrt, square_class_labels

Coords = tuple  # tuple[Fraction, ...]

MAX_MULTIQUAD_GENERATORS = 3
MAX_TOWER_DEPTH = 5

_ZERO = Fraction(0)
_ONE = Fraction(1)
_HALF = Fraction(1, 2)


class QuadTower:
    """A tower of quadratic extensions over Q; depth 0 is Q itself."""

    def __init__(self, parent: QuadTower | None = None, radicand: QElement | None = None):
        self.parent = parent
        if parent is None:
            self.depth = 0
            self._c: Coords | None = None
            return
        if parent.depth + 1 > MAX_TOWER_DEPTH:
            raise ValueError(f"tower depth capped at {MAX_TOWER_DEPTH}")
        c = parent.coerce(radicand)
        if c.is_zero():
            raise ValueError("radicand must be nonzero")
        if parent._sqrt(c.coords) is not None:
            raise ValueError(f"{c} is already a square in {parent}")
        self.depth = parent.depth + 1
        self._c = c.coords
        # a rational radicand allows a cheap scaling in products
        self._c_rational = all(x == 0 for x in c.coords[1:])

    # ----------------------------------------------------------------- shape
    @property
    def degree(self) -> int:
        return 1 << self.depth

    @property
    def radicand(self) -> QElement | None:
        if self.parent is None:
            return None
        return QElement(self.parent, self._c)

    def chain(self) -> list[QuadTower]:
        """The subtowers ``K_0, ..., K_d`` (self last)."""
        out = []
        f: QuadTower | None = self
        while f is not None:
            out.append(f)
            f = f.parent
        return out[::-1]

    def level(self, j: int) -> QuadTower:
        return self.chain()[j]

    @cached_property
    def key(self) -> tuple:
        if self.parent is None:
            return ()
        return self.parent.key + (self._c,)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QuadTower) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __str__(self) -> str:
        if self.parent is None:
            return "Q"
        c = self.radicand
        inner = str(c.coords[0]) if self._c_rational else "[" + ", ".join(map(str, c.coords)) + "]"
        return f"{self.parent}(sqrt {inner})"

    __repr__ = __str__

    def adjoin(self, radicand: QElement | RationalLike) -> QuadTower:
        return QuadTower(self, radicand)

    def is_subtower_of(self, other: QuadTower) -> bool:
        return other.depth >= self.depth and other.level(self.depth) == self

    # ------------------------------------------------------------ elements
    def __call__(self, value=0) -> QElement:
        return self.coerce(value)

    def coerce(self, value) -> QElement:
        if isinstance(value, QElement):
            if value.field == self:
                return value
            if value.field.is_subtower_of(self):
                return QElement(self, value.coords + (_ZERO,) * (self.degree - len(value.coords)))
            raise TypeError(f"{value.field} is not a subfield of {self}")
        if isinstance(value, (int, Fraction, str)):
            return QElement(self, (as_fraction(value),) + (_ZERO,) * (self.degree - 1))
        if isinstance(value, (list, tuple)):
            if len(value) != self.degree:
                raise ValueError(f"expected {self.degree} coordinates")
            return QElement(self, tuple(as_fraction(x) for x in value))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def gen(self, j: int | None = None) -> QElement:
        """The root ``r_j`` (default: the top one)."""
        j = self.depth - 1 if j is None else j
        if not 0 <= j < self.depth:
            raise IndexError(j)
        coords = [_ZERO] * self.degree
        coords[1 << j] = _ONE
        return QElement(self, tuple(coords))

    def gens(self) -> list[QElement]:
        return [self.gen(j) for j in range(self.depth)]

    def zero(self) -> QElement:
        return self.coerce(0)

    def one(self) -> QElement:
        return self.coerce(1)

    # ---------------------------------------------------- coordinate kernel
    def _add(self, x: Coords, y: Coords) -> Coords:
        return tuple(a + b for a, b in zip(x, y))

    def _sub(self, x: Coords, y: Coords) -> Coords:
        return tuple(a - b for a, b in zip(x, y))

    def _neg(self, x: Coords) -> Coords:
        return tuple(-a for a in x)

    def _scale(self, x: Coords, s: Fraction) -> Coords:
        return tuple(a * s for a in x)

    def _mul(self, x: Coords, y: Coords) -> Coords:
        if self.depth == 0:
            return (x[0] * y[0],)
        h = len(x) // 2
        P = self.parent
        u1, v1, u2, v2 = x[:h], x[h:], y[:h], y[h:]
        z1, z2 = not any(v1), not any(v2)
        if z1 and z2:
            return P._mul(u1, u2) + v1
        if z1:
            return P._mul(u1, u2) + P._mul(u1, v2)
        if z2:
            return P._mul(u1, u2) + P._mul(v1, u2)
        vv = P._mul(v1, v2)
        vv = P._scale(vv, self._c[0]) if self._c_rational else P._mul(vv, self._c)
        return P._add(P._mul(u1, u2), vv) + P._add(P._mul(u1, v2), P._mul(v1, u2))

    def _inv(self, x: Coords) -> Coords:
        if self.depth == 0:
            if x[0] == 0:
                raise ZeroDivisionError("inverse of 0")
            return (1 / x[0],)
        h = len(x) // 2
        P = self.parent
        u, v = x[:h], x[h:]
        vv = P._mul(v, v)
        vv = P._scale(vv, self._c[0]) if self._c_rational else P._mul(vv, self._c)
        d = P._inv(P._sub(P._mul(u, u), vv))
        return P._mul(u, d) + P._neg(P._mul(v, d))

    def _conj(self, x: Coords) -> Coords:
        h = len(x) // 2
        return x[:h] + tuple(-a for a in x[h:])

    def _sqrt(self, x: Coords) -> Coords | None:
        """A square root of ``x`` in this field, or None.

        Descent: with ``x = u + v r`` and ``N = u^2 - c v^2`` (the relative
        norm), a root ``y + z r`` satisfies ``y^2 = (u +- sqrt N)/2`` and
        ``z = v / 2y``; both signs of ``sqrt N`` are tried.
        """
        if self.depth == 0:
            r = rational_sqrt(x[0])
            return None if r is None else (r,)
        if all(a == 0 for a in x):
            return x
        h = len(x) // 2
        P = self.parent
        u, v = x[:h], x[h:]
        zeros = (_ZERO,) * h
        if all(a == 0 for a in v):
            y = P._sqrt(u)
            if y is not None:
                return y + zeros
            z = P._sqrt(P._mul(u, P._inv(self._c)))
            if z is not None:
                return zeros + z
            return None
        vv = P._mul(v, v)
        vv = P._scale(vv, self._c[0]) if self._c_rational else P._mul(vv, self._c)
        n = P._sqrt(P._sub(P._mul(u, u), vv))
        if n is None:
            return None
        for s in (n, P._neg(n)):
            w = P._scale(P._add(u, s), _HALF)
            if all(a == 0 for a in w):
                continue
            y = P._sqrt(w)
            if y is None:
                continue
            z = P._mul(v, P._inv(P._scale(y, Fraction(2))))
            return y + z
        return None

    # ------------------------------------------------------- automorphisms
    def automorphisms(self) -> list[Automorphism]:
        """All field automorphisms, found by extending level by level.

        An automorphism is fixed by the images of ``r_0, ..., r_{d-1}``; the
        image of ``r_j`` must be a square root of the image of ``c_j``.  The
        count equals the degree exactly when the tower is Galois over Q.
        """
        partial: list[tuple[Coords, ...]] = [()]
        for j in range(self.depth):
            c_j = self.level(j + 1)._c
            nxt = []
            for imgs in partial:
                img_c = _evaluate(self, c_j, imgs)
                s = self._sqrt(img_c)
                if s is None:
                    continue
                nxt.append(imgs + (s,))
                nxt.append(imgs + (self._neg(s),))
            partial = nxt
        return [Automorphism(self, imgs) for imgs in partial]

    def is_galois(self) -> bool:
        return len(self.automorphisms()) == self.degree

    def label(self, x: QElement) -> str:
        return f"alg:{x.text()}"


def _monomial_images(target: QuadTower, n: int, images: Sequence[Coords]) -> list[Coords]:
    mono: list[Coords] = [target.one().coords]
    for m in range(1, n):
        top = m.bit_length() - 1
        mono.append(target._mul(mono[m ^ (1 << top)], images[top]))
    return mono


def _evaluate(target: QuadTower, coords: Coords, images: Sequence[Coords], mono: list | None = None) -> Coords:
    """Evaluate the element with ``coords`` (over the first len(images) roots) at ``images``."""
    if mono is None:
        mono = _monomial_images(target, len(coords), images)
    acc = (_ZERO,) * target.degree
    for a, mon in zip(coords, mono):
        if a != 0:
            acc = target._add(acc, target._scale(mon, a))
    return acc


class QElement:
    """An element of a :class:`QuadTower`."""

    __slots__ = ("field", "coords")

    def __init__(self, field: QuadTower, coords: Coords):
        self.field = field
        self.coords = coords

    def _other(self, y) -> Coords:
        if isinstance(y, QElement) and y.field != self.field:
            if y.field.is_subtower_of(self.field):
                return self.field.coerce(y).coords
            return NotImplemented
        try:
            return self.field.coerce(y).coords
        except TypeError:
            return NotImplemented

    def __add__(self, y):
        o = self._other(y)
        if o is NotImplemented:
            return o
        return QElement(self.field, self.field._add(self.coords, o))

    __radd__ = __add__

    def __sub__(self, y):
        o = self._other(y)
        if o is NotImplemented:
            return o
        return QElement(self.field, self.field._sub(self.coords, o))

    def __rsub__(self, y):
        return (-self) + y

    def __neg__(self):
        return QElement(self.field, self.field._neg(self.coords))

    def __mul__(self, y):
        o = self._other(y)
        if o is NotImplemented:
            return o
        return QElement(self.field, self.field._mul(self.coords, o))

    __rmul__ = __mul__

    def inverse(self) -> QElement:
        return QElement(self.field, self.field._inv(self.coords))

    def __truediv__(self, y):
        o = self._other(y)
        if o is NotImplemented:
            return o
        return QElement(self.field, self.field._mul(self.coords, self.field._inv(o)))

    def __rtruediv__(self, y):
        return self.field.coerce(y) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self.field.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, y) -> bool:
        if isinstance(y, QElement):
            if y.field == self.field:
                return self.coords == y.coords
            if y.field.is_subtower_of(self.field) or self.field.is_subtower_of(y.field):
                big = self.field if self.field.depth >= y.field.depth else y.field
                return big.coerce(self).coords == big.coerce(y).coords
            return False
        if isinstance(y, (int, Fraction)):
            return self.coords == self.field.coerce(y).coords
        return NotImplemented

    def __hash__(self) -> int:
        # trailing zeros stripped so that subfield elements hash alike
        c = list(self.coords)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        return hash(tuple(c))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def is_rational(self) -> bool:
        return all(a == 0 for a in self.coords[1:])

    def conjugate(self) -> QElement:
        """Image under ``r_top -> -r_top`` (the nontrivial automorphism over the parent)."""
        return QElement(self.field, self.field._conj(self.coords))

    def split(self) -> tuple[QElement, QElement]:
        """``(u, v)`` in the parent with ``self = u + v * r_top``."""
        h = len(self.coords) // 2
        P = self.field.parent
        return QElement(P, self.coords[:h]), QElement(P, self.coords[h:])

    def restrict(self, sub: QuadTower) -> QElement:
        """The same element viewed in a subtower containing it."""
        if not sub.is_subtower_of(self.field):
            raise TypeError(f"{sub} is not a subtower of {self.field}")
        if any(self.coords[sub.degree:]):
            raise ValueError(f"{self} does not lie in {sub}")
        return QElement(sub, self.coords[: sub.degree])

    def text(self) -> str:
        return "[" + ", ".join(str(a) for a in self.coords) + f"]@{self.field}"

    def __str__(self) -> str:
        terms = []
        names = [f"r{j}" for j in range(self.field.depth)]
        if isinstance(self.field, MultiquadField):
            names = [f"√{a}" for a in self.field.generators]
        for m, a in enumerate(self.coords):
            if a == 0:
                continue
            mon = "·".join(names[i] for i in range(self.field.depth) if m >> i & 1)
            if not mon:
                terms.append(str(a))
            elif a == 1:
                terms.append(mon)
            elif a == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"{a}·{mon}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __repr__(self) -> str:
        return f"QElement({self.text()})"


class Automorphism:
    """A field automorphism given by the images of the tower roots."""

    def __init__(self, field: QuadTower, images: Sequence[Coords]):
        self.field = field
        self.images = tuple(images)

    @cached_property
    def _monomials(self) -> list[Coords]:
        return _monomial_images(self.field, self.field.degree, self.images)

    def __call__(self, x: QElement) -> QElement:
        x = self.field.coerce(x)
        return QElement(self.field, _evaluate(self.field, x.coords, self.images, self._monomials))

    def __mul__(self, other: Automorphism) -> Automorphism:
        """Composition: ``(self * other)(x) = self(other(x))``."""
        return Automorphism(self.field, tuple(self(QElement(self.field, im)).coords for im in other.images))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Automorphism) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def is_identity(self) -> bool:
        return all(im == g.coords for im, g in zip(self.images, self.field.gens()))

    def fixes(self, x: QElement) -> bool:
        return self(x) == x

    def __repr__(self) -> str:
        return "Automorphism(" + ", ".join(str(QElement(self.field, im)) for im in self.images) + ")"


RATIONALS = QuadTower()


def tower(*radicands) -> QuadTower:
    """Build a tower by successive adjunction.

    Each radicand may be a rational, or a callable taking the current field
    and returning an element of it (so later radicands can use earlier roots).
    """
    f = RATIONALS
    for c in radicands:
        f = f.adjoin(c(f) if callable(c) else c)
    return f


class MultiquadField(QuadTower):
    """``Q(sqrt a_1, ..., sqrt a_d)`` for squarefree integers with independent classes."""

    def __init__(self, generators: Iterable[int]):
        gens = tuple(int(a) for a in generators)
        if len(gens) > MAX_MULTIQUAD_GENERATORS:
            raise ValueError(f"at most {MAX_MULTIQUAD_GENERATORS} generators supported")
        space = SquareClassSpace()
        for a in gens:
            if a in (0, 1) or any(e > 1 for e in factorize(a).values()):
                raise ValueError(f"{a} is not a squarefree integer")
            space, independent = insert_and_test_independent(space, SquareClassVector(square_class_labels(a)))
            if not independent:
                raise ValueError(f"square classes of {list(gens)} are dependent in Q*/Q*^2")
        self.generators = gens
        if not gens:
            QuadTower.__init__(self)
            return
        parent = MultiquadField(gens[:-1])
        QuadTower.__init__(self, parent, Fraction(gens[-1]))

    def __str__(self) -> str:
        if not self.generators:
            return "Q"
        return "Q(" + ", ".join(f"sqrt {a}" for a in self.generators) + ")"

    __repr__ = __str__

    def __hash__(self) -> int:
        return hash(self.key)

    def sign_flip(self, pattern: int) -> Automorphism:
        """Automorphism sending ``sqrt a_i -> -sqrt a_i`` for each bit i of ``pattern``."""
        images = []
        for j, g in enumerate(self.gens()):
            images.append(g.coords if not pattern >> j & 1 else self._neg(g.coords))
        return Automorphism(self, images)

    def automorphisms(self) -> list[Automorphism]:
        return [self.sign_flip(k) for k in range(self.degree)]

    def subfield_without(self, i: int) -> MultiquadField:
        return MultiquadField(self.generators[:i] + self.generators[i + 1 :])


def galois_orbit(x: QElement) -> list[QElement]:
    """Images of ``x`` under all sign patterns, pattern k flipping ``sqrt a_i`` for bits i of k."""
    F = x.field
    if not isinstance(F, MultiquadField):
        raise TypeError("galois_orbit needs a multiquadratic field")
    out = []
    for k in range(F.degree):
        out.append(
            QElement(F, tuple(-a if bin(m & k).count("1") % 2 else a for m, a in enumerate(x.coords)))
        )
    return out


def norm_to_subfield(x: QElement, i: int) -> QElement:
    """``x * sigma_i(x)`` where ``sigma_i`` flips only ``sqrt a_i``; lies in the subfield without ``sqrt a_i``."""
    F = x.field
    if not isinstance(F, MultiquadField):
        raise TypeError("norm_to_subfield needs a multiquadratic field")
    if F.depth == 0 or not 0 <= i < F.depth:
        raise IndexError(f"generator index {i} out of range for {F}")
    return x * F.sign_flip(1 << i)(x)


def canonical_root(coords: Coords) -> Coords:
    for a in coords:
        if a != 0:
            return coords if a > 0 else tuple(-b for b in coords)
    return coords


Number = Union[int, Fraction, QElement]
