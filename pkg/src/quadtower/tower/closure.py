"""Galois criterion for quadratic extensions of the level-2 field, and Galois closures.

Groups of the fields built here are read off by a permutation oracle: every
automorphism of the closure permutes the conjugates of the tower roots, and
that permutation group is handed to the 2-group engine.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..exactfield import QElement, QuadTower, as_fraction, is_square, sqrt_exact, tower
from ..exactfield.multiquad import Automorphism
from ..symbols import embeds_in_d4
from ..twogroup import D4_FINGERPRINT, Fingerprint, FiniteTwoGroup, fingerprint
from .fragment import FragmentError, TowerFragment, designated_subfield


def _nonsquare(x, where: str) -> None:
    if x == 0 if not isinstance(x, QElement) else x.is_zero():
        raise ValueError(f"zero does not define a quadratic extension of {where}")
    if is_square(x):
        raise ValueError(f"{x} is a square in {where}; the extension is degenerate")


def _group_for(fragment: TowerFragment, over) -> list:
    if over is None:
        return fragment.action()
    if fragment.kind == "Q" and not fragment.generators:
        raise FragmentError("the fragment has no quadratic subfield")
    return fragment.subgroup_fixing(over)


def is_quadratic_ext_galois(fragment: TowerFragment, a, over=None) -> bool:
    """Whether K(sqrt a) is Galois over the base (or over base(sqrt over)).

    True iff s(a)/a is a square in K for every s in the relevant group.
    """
    a = fragment.coerce(a)
    _nonsquare(a, str(fragment.level2))
    return all(is_square(s(a) / a) for s in _group_for(fragment, over))


# --------------------------------------------------------------------------- permutation oracle
@dataclass
class PermutationAction:
    points: list  # conjugates of the tower roots
    automorphisms: list
    perms: list  # perms[i] is automorphisms[i] acting on points
    group: FiniteTwoGroup

    def subgroup_fixing(self, x: QElement) -> FiniteTwoGroup:
        perms = [p for s, p in zip(self.automorphisms, self.perms) if s(x) == x]
        return FiniteTwoGroup.from_permutations(perms, "stabiliser")


def permutation_action(E: QuadTower, autos: Sequence[Automorphism] | None = None) -> PermutationAction:
    """The automorphism group of E as permutations of the orbits of its tower roots."""
    autos = list(autos) if autos is not None else E.automorphisms()
    points: list[QElement] = []
    index: dict = {}
    for g in E.gens():
        for s in autos:
            y = s(g)
            if y not in index:
                index[y] = len(points)
                points.append(y)
    perms = [tuple(index[s(p)] for p in points) for s in autos]
    G = FiniteTwoGroup.from_permutations(perms or [()], f"Aut({E})")
    if G.order != len(autos):
        raise ArithmeticError("the action on roots is not faithful")
    return PermutationAction(points, autos, perms, G)


# --------------------------------------------------------------------------- witnesses
@dataclass
class GaloisWitness:
    defining: str
    radicands: list  # texts of the square roots adjoined to the level-2 field
    degree: int
    fingerprint: Fingerprint
    galois_input: bool
    stable: bool  # every base automorphism maps the adjoined roots into the closure
    extension: QuadTower = field(repr=False)
    group: FiniteTwoGroup = field(repr=False)
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "defining": self.defining,
            "radicands": self.radicands,
            "degree": self.degree,
            "fingerprint": self.fingerprint.to_json(),
            "galois_input": self.galois_input,
            "stable": self.stable,
        }
        out.update(self.extra)
        return out


def galois_closure_quadratic(fragment: TowerFragment, k, over=None) -> GaloisWitness:
    """Galois closure over Q of T = K(sqrt k), for T Galois over L = Q(sqrt over).

    Either T is already Galois (closure = T) or the closure is
    T(sqrt s(k)) for an automorphism s of K moving the class of k.
    """
    if fragment.kind != "Q":
        raise FragmentError("closures are built over rational fragments")
    K = fragment.level2
    k = K.coerce(k)
    _nonsquare(k, str(K))
    full = fragment.action()
    if fragment.generators:
        H = fragment.subgroup_fixing(designated_subfield(fragment, over))
        if not all(is_square(h(k) / k) for h in H):
            raise ValueError(f"K(sqrt({k})) is not Galois over the designated quadratic subfield")
    galois = all(is_square(s(k) / k) for s in full)
    T = K.adjoin(k)
    radicands = [k]
    if not galois:
        sigma = next(s for s in full if not is_square(s(k) / k))
        radicands.append(sigma(k))
    E = T if galois else T.adjoin(T.coerce(radicands[1]))
    action = permutation_action(E)
    if action.group.order != E.degree:
        raise ArithmeticError(f"{E} is not Galois over Q")
    stable = all(is_square(E.coerce(t(c))) for t in full for c in radicands)
    return GaloisWitness(
        defining=str(k),
        radicands=[str(c) for c in radicands],
        degree=E.degree,
        fingerprint=fingerprint(action.group),
        galois_input=galois,
        stable=stable,
        extension=E,
        group=action.group,
    )


# --------------------------------------------------------------------------- dihedral witnesses
def conic_points(a, b, bound: int = 100):
    """Integer points (x, y, z), x, y >= 1, of z^2 = a x^2 + b y^2 by increasing height."""
    a, b = as_fraction(a), as_fraction(b)
    for h in range(1, bound + 1):
        for x in range(1, h + 1):
            for y in range(1, h + 1):
                if max(x, y) != h:
                    continue
                v = a * x * x + b * y * y
                if v <= 0:
                    continue
                z = sqrt_exact(v)
                if z is not None and abs(z) <= bound:
                    yield x, y, z


def d4_witness_from_point(a, b, point: tuple) -> GaloisWitness | None:
    """The closure of Q(sqrt(z + x sqrt a)) for a point z^2 = a x^2 + b y^2.

    Returns None if the point is degenerate (the quartic field is Galois).
    """
    a, b = as_fraction(a), as_fraction(b)
    x, y, z = (as_fraction(c) for c in point)
    if z * z != a * x * x + b * y * y or x == 0 or y == 0:
        raise ValueError(f"{point} is not a usable point on z^2 = {a} x^2 + {b} y^2")
    F1 = tower(a)
    delta = F1(z) + F1.gen() * x
    if is_square(delta):
        return None
    T = F1.adjoin(delta)
    conj = T.coerce(F1(z) - F1.gen() * x)
    if is_square(conj):
        return None
    E = T.adjoin(conj)
    action = permutation_action(E)
    fp = fingerprint(action.group)
    sqrt_b = sqrt_exact(E.coerce(b))
    root_ab = E.coerce(F1.gen()) * sqrt_b if sqrt_b is not None else None
    cyclic_over_ab = None
    if root_ab is not None:
        C = action.subgroup_fixing(root_ab)
        cyclic_over_ab = C.order == 4 and fingerprint(C).is_cyclic
    return GaloisWitness(
        defining=f"{z}+{x}*sqrt({a})",
        radicands=[str(delta), str(F1(z) - F1.gen() * x)],
        degree=E.degree,
        fingerprint=fp,
        galois_input=False,
        stable=action.group.order == E.degree,
        extension=E,
        group=action.group,
        extra={
            "point": [str(x), str(y), str(z)],
            "norm": str(z * z - a * x * x),
            "contains_sqrt_a": True,
            "contains_sqrt_b": sqrt_b is not None,
            "cyclic_over_sqrt_ab": bool(cyclic_over_ab),
            "dihedral": fp == D4_FINGERPRINT,
        },
    )


def construct_d4_witness(a, b, bound: int = 100) -> GaloisWitness | None:
    """A dihedral octic field containing Q(sqrt a, sqrt b), cyclic over Q(sqrt ab).

    Raises if the embedding criterion fails; returns None when no usable
    conic point of height <= ``bound`` exists.
    """
    a, b = as_fraction(a), as_fraction(b)
    if not embeds_in_d4(a, b):
        raise ValueError(f"({a}, {b}) fails the dihedral embedding criterion")
    if is_square(a * b):
        raise ValueError(f"[{a}] = [{b}]: the biquadratic field degenerates")
    for point in conic_points(a, b, bound):
        w = d4_witness_from_point(a, b, point)
        if w is not None:
            return w
    return None

