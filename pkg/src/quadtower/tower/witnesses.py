"""Explicit fields behind the exponent statements: real cyclotomic, finite, and function-field witnesses."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..exactfield import GF, MultiquadField, QElement, QuadTower, is_square, sqrt_exact, tower
from ..twogroup import FiniteTwoGroup, Fingerprint, fingerprint
from .closure import permutation_action
from .fragment import TowerFragment
from .kummer import kummer_data

# minimal polynomial of 2cos(pi/16) = zeta_32 + zeta_32^-1, coefficients low -> high
ZETA32_PLUS_MINPOLY = (2, 0, -16, 0, 20, 0, -8, 0, 1)


def poly_eval(coeffs, x):
    acc = x * 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def real_cyclotomic_32() -> QuadTower:
    """Q(sqrt 2)(sqrt(2 + sqrt 2))(sqrt(2 + sqrt(2 + sqrt 2))); its top root is 2cos(pi/16)."""
    return tower(2, lambda f: 2 + f.gen(), lambda f: 2 + f.gen())


@dataclass
class CyclotomicWitness:
    degree: int
    roots: list
    fingerprint: Fingerprint
    splits: bool
    contains_sqrt2: bool

    @property
    def cyclic_of_degree_8(self) -> bool:
        return self.degree == 8 and self.fingerprint.order == 8 and self.fingerprint.is_cyclic

    def to_json(self) -> dict:
        return {"degree": self.degree, "roots": [str(r) for r in self.roots],
                "fingerprint": self.fingerprint.to_json(), "splits": self.splits,
                "contains_sqrt2": self.contains_sqrt2}


def cyclotomic_witness() -> CyclotomicWitness:
    """The splitting field of the minimal polynomial of zeta_32 + zeta_32^-1.

    The field is built as a tower; the eight conjugates are the images of its
    top root, each is checked against the polynomial, and the group is read
    off from the permutation of those eight roots.
    """
    E = real_cyclotomic_32()
    theta = E.gen()
    autos = E.automorphisms()
    roots = []
    for s in autos:
        y = s(theta)
        if y not in roots:
            roots.append(y)
    splits = len(roots) == 8 and all(poly_eval(ZETA32_PLUS_MINPOLY, r).is_zero() for r in roots)
    index = {r: i for i, r in enumerate(roots)}
    perms = [tuple(index[s(r)] for r in roots) for s in autos]
    G = FiniteTwoGroup.from_permutations(perms, "Gal(Q(zeta32)+/Q)")
    # sqrt 2 = 2cos(pi/4) = (theta^2 - 2)^2 - 2
    s2 = (theta * theta - 2) ** 2 - 2
    contains = s2 * s2 == 2 and E.coerce(s2) in (E.gen(0), -E.gen(0))
    return CyclotomicWitness(E.degree, roots, fingerprint(G), splits, contains)


# --------------------------------------------------------------------------- finite fields
@dataclass
class FiniteLevel:
    n: int
    field: GF
    j1_full: bool
    next_root: bool  # the level's nonsquares acquire square roots one level up
    fingerprint: Fingerprint

    def to_json(self) -> dict:
        return {"n": self.n, "field": repr(self.field), "j1_full": self.j1_full,
                "next_level_has_root": self.next_root, "fingerprint": self.fingerprint.to_json()}


def frobenius_group(F: GF, q: int) -> FiniteTwoGroup:
    """Gal(F/F_q) as the permutation of the q-power orbit of the generator of F."""
    g = F.gen
    orbit = [g]
    while True:
        y = orbit[-1] ** q
        if y == g:
            break
        orbit.append(y)
    index = {x: i for i, x in enumerate(orbit)}
    perm = tuple(index[x**q] for x in orbit)
    return FiniteTwoGroup.from_permutations([perm] if len(orbit) > 1 else [], f"Gal({F}/F{q})")


def subfield_nonsquare_becomes_square(small: GF, big: GF) -> bool:
    """Embedding-free check that the generator class of ``small`` is a square in ``big``.

    Inside ``big`` (order Q^2) the subfield of order Q is {y : y^Q = y}, and
    h^(Q+1) generates its multiplicative group for h a generator of ``big``.
    """
    Q = small.q
    if big.q != Q * Q:
        raise ValueError("big must be the quadratic extension of small")
    c = big.gen ** (Q + 1)
    in_subfield = c**Q == c
    nonsquare_there = c ** ((Q - 1) // 2) != 1
    return in_subfield and nonsquare_there and c.is_square()


def finite_tower_levels(fragment: TowerFragment, depth: int = 4) -> list[FiniteLevel]:
    out = []
    for n in range(1, depth + 1):
        F = fragment.finite_level(n)
        data = kummer_data(fragment, n=n)
        nxt = subfield_nonsquare_becomes_square(F, fragment.finite_level(n + 1))
        out.append(FiniteLevel(n, F, data.is_full, nxt, fingerprint(frobenius_group(F, fragment.q))))
    return out


# --------------------------------------------------------------------------- function-field dihedral
@dataclass
class FunctionFieldD4:
    constant_field: str
    obstruction: str
    point: tuple
    conic_identity: bool
    norm_identity: bool
    specialisation: Fraction
    fingerprint: Fingerprint | None

    @property
    def passed(self) -> bool:
        return self.conic_identity and self.norm_identity and self.fingerprint is not None and \
            self.fingerprint.order == 8 and self.fingerprint.involutions == 5

    def to_json(self) -> dict:
        return {"constant_field": self.constant_field, "obstruction": self.obstruction,
                "point": list(self.point), "conic_identity": self.conic_identity,
                "norm_identity": self.norm_identity, "specialised_at_t": str(self.specialisation),
                "fingerprint": None if self.fingerprint is None else self.fingerprint.to_json()}


def _search_constant_point(k2: QuadTower, i: QElement) -> tuple | None:
    """Find x, y in {0, +-1, +-i} and z in k2 with (t+2i)x^2 + (t-i)y^2 = z^2 identically in t.

    Comparing coefficients: x^2 + y^2 = 0 and z^2 = 2i x^2 - i y^2.
    """
    units = [k2(1), k2(-1), i, -i]
    for x in units:
        for y in units:
            if not (x * x + y * y).is_zero():
                continue
            z = sqrt_exact(i * 2 * x * x - i * y * y)
            if z is not None:
                return x, y, z
    return None


def function_field_d4(t0: Fraction = Fraction(1)) -> FunctionFieldD4:
    """A dihedral extension of k'(t) containing k'(sqrt(t+2i), sqrt(t-i)).

    Over Q(i) the conic (t+2i)x^2 + (t-i)y^2 = z^2 has no constant point: at
    t = i it forces 3i to be a square.  Adjoining sqrt(3i) fixes that.  The
    group over k' is read off at the specialisation t = t0: a specialised
    group of order 8 inside the generic group (itself inside D4) pins the
    generic group down.
    """
    Qi = MultiquadField([-1])
    obstruction = not is_square(Qi.gen() * 3)
    k2 = tower(-1, lambda f: f.gen() * 3)
    i = k2.gen(0)
    pt = _search_constant_point(k2, i)
    if pt is None:
        return FunctionFieldD4(str(k2), "3i nonsquare", (), False, False, t0, None)
    x, y, z = pt
    # conic, coefficientwise in t
    conic = (x * x + y * y).is_zero() and (i * 2 * x * x - i * y * y) == z * z
    # delta = z + x sqrt(t+2i) has norm z^2 - (t+2i) x^2 = (t-i) y^2; compare coefficients
    norm = (z * z - i * 2 * x * x) == -i * y * y and -(x * x) == y * y
    # specialise: E0 = k'(sqrt(t0+2i))(sqrt delta)(sqrt delta')
    a0 = k2(t0) + i * 2
    F1 = k2.adjoin(a0)
    r = F1.gen()
    delta = F1.coerce(z) + r * F1.coerce(x)
    fp = None
    if not is_square(delta):
        T = F1.adjoin(delta)
        conj = T.coerce(F1.coerce(z) - r * F1.coerce(x))
        if not is_square(conj):
            E = T.adjoin(conj)
            fixing = [s for s in E.automorphisms()
                      if s(E.gen(0)) == E.gen(0) and s(E.gen(1)) == E.gen(1)]
            fp = fingerprint(permutation_action(E, fixing).group)
    point = tuple(str(c) for c in (x, y, z))
    return FunctionFieldD4(str(k2), "3i is not a square in Q(i)" if obstruction else "none",
                           point, conic, norm, t0, fp)


# --------------------------------------------------------------------------- case dispatch
@dataclass(frozen=True)
class SymbolicField:
    """A field known only through its squareness predicate on rationals."""

    name: str
    square: Callable[[Fraction], bool]

    def is_square(self, x) -> bool:
        return self.square(Fraction(x))


QUADRATICALLY_CLOSED = SymbolicField("quadratically closed", lambda x: x != 0)
REAL_CLOSED = SymbolicField("real closed", lambda x: x > 0)
RATIONALS_FIELD = SymbolicField("Q", lambda x: x != 0 and is_square(x))

_POOL = tuple(Fraction(x) for x in (-1, 2, 3, -2, 5, -3, 6, 7, 10))


@dataclass
class CaseVerdict:
    case: int
    field: str
    reason: str

    def to_json(self) -> dict:
        return {"case": self.case, "field": self.field, "reason": self.reason}


def classify_field(F, pool=_POOL) -> CaseVerdict:
    """Which of the three cases applies, decided on a finite pool of test elements.

    Case 1: everything is a square.  Case 2: -1 is not a square, every x or -x
    is a square, and sums of two squares are squares (an ordering whose
    positive cone is the squares).  Otherwise case 3, with a nonsquare sum of
    two squares or a pair [a], [-a] of nontrivial classes as the witness.
    """
    name = getattr(F, "name", repr(F))
    sq = F.is_square
    if all(sq(x) for x in pool):
        return CaseVerdict(1, name, "every pool element is a square")
    squares = [x for x in pool if sq(x)] + [Fraction(1)]
    if not sq(-1) and all(sq(x) or sq(-x) for x in pool) and \
            all(sq(a + b) for a in squares for b in squares if a + b != 0):
        return CaseVerdict(2, name, "squares form an ordering: x or -x is a square, sums of squares are squares")
    for a in squares:
        for b in squares:
            if a + b != 0 and not sq(a + b):
                return CaseVerdict(3, name, f"{a + b} = {a} + {b} is a nonsquare sum of two squares")
    for a in pool:
        if not sq(a) and not sq(-a):
            return CaseVerdict(3, name, f"[{a}] and [{-a}] are both nontrivial")
    return CaseVerdict(3, name, "not case 1 or 2")
