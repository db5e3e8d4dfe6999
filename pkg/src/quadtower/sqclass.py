"""F2-linear algebra on square classes named by opaque labels.

A square class [b] of K*/K*^2 is stored as the set of generator labels in
which it has an odd coordinate.  Addition in the F2-space is symmetric
difference, so ``[b] + [c]`` is the class of ``b*c``.  Labels are never
interpreted here; the owning module is responsible for choosing labels
whose classes are independent.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable


@dataclass(frozen=True)
class SquareClassVector:
    support: frozenset[str] = field(default_factory=frozenset)

    def __init__(self, support: Iterable[str] = ()):
        object.__setattr__(self, "support", frozenset(support))

    @classmethod
    def of(cls, *labels: str) -> SquareClassVector:
        """Class of the product of the named generators, e.g. ``of("p:2", "p:3")`` is [6]."""
        out: set[str] = set()
        for lab in labels:
            out ^= {lab}
        return cls(out)

    def __add__(self, other: SquareClassVector) -> SquareClassVector:
        return SquareClassVector(self.support ^ other.support)

    __xor__ = __add__

    def __bool__(self) -> bool:
        return bool(self.support)

    def is_identity(self) -> bool:
        return not self.support

    @property
    def leading(self) -> str:
        return min(self.support)

    def __str__(self) -> str:
        if not self.support:
            return "[1]"
        return "[" + "*".join(sorted(self.support)) + "]"

    def __repr__(self) -> str:
        return f"SquareClassVector({sorted(self.support)!r})"


IDENTITY = SquareClassVector()


def _reduce(basis: tuple[SquareClassVector, ...], v: SquareClassVector) -> SquareClassVector:
    # reduced echelon: a pivot occurs in exactly one basis vector, so order is irrelevant
    rest = set(v.support)
    for b in basis:
        if b.leading in rest:
            rest ^= b.support
    return SquareClassVector(rest)


@dataclass(frozen=True)
class SquareClassSpace:
    """Span of square classes kept in reduced echelon form.

    Each basis vector's pivot is its lexicographically smallest label and no
    pivot occurs in any other basis vector.
    """

    basis: tuple[SquareClassVector, ...] = ()

    @classmethod
    def span(cls, vectors: Iterable[SquareClassVector]) -> SquareClassSpace:
        space = cls()
        for v in vectors:
            space, _ = insert_and_test_independent(space, v)
        return space

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[str, ...]:
        return tuple(b.leading for b in self.basis)

    def labels(self) -> frozenset[str]:
        out: set[str] = set()
        for b in self.basis:
            out |= b.support
        return frozenset(out)

    def elements(self) -> list[SquareClassVector]:
        """All 2**dim elements of the span (identity first)."""
        out = []
        for bits in product((0, 1), repeat=self.dimension):
            acc: frozenset[str] = frozenset()
            for bit, b in zip(bits, self.basis):
                if bit:
                    acc = acc ^ b.support
            out.append(SquareClassVector(acc))
        return out

    def __contains__(self, v: SquareClassVector) -> bool:
        return membership(self, v)

    def __str__(self) -> str:
        return "span{" + ", ".join(str(b) for b in self.basis) + "}"


def insert_and_test_independent(
    space: SquareClassSpace, v: SquareClassVector
) -> tuple[SquareClassSpace, bool]:
    """Return ``(span(space + v), independent)``."""
    r = _reduce(space.basis, v)
    if not r:
        return space, False
    p = r.leading
    basis = [b + r if p in b.support else b for b in space.basis]
    basis.append(r)
    basis.sort(key=lambda b: b.leading)
    return SquareClassSpace(tuple(basis)), True


def membership(space: SquareClassSpace, v: SquareClassVector) -> bool:
    return not _reduce(space.basis, v)


def coordinates(space: SquareClassSpace, v: SquareClassVector) -> tuple[int, ...] | None:
    """Coordinates of ``v`` in ``space.basis``, or None when ``v`` is outside the span."""
    coords = [0] * space.dimension
    rest = set(v.support)
    for i, b in enumerate(space.basis):
        if b.leading in rest:
            coords[i] = 1
            rest ^= b.support
    return tuple(coords) if not rest else None


def intersection_trivial(
    space_a: SquareClassSpace, space_b: SquareClassSpace
) -> bool | SquareClassVector:
    """True when the spans meet only in [1]; otherwise a common nonzero class.

    The witness is written in terms of ``space_b``'s basis: each basis vector
    of B is eliminated against A and the B-vectors already processed, while the
    combination of B-vectors used is tracked.  A vector that reduces to zero
    gives a nonzero element of B lying in A.
    """
    rows: dict[str, tuple[frozenset[str], frozenset[int]]] = {
        b.leading: (b.support, frozenset()) for b in space_a.basis
    }
    for idx, b in enumerate(space_b.basis):
        vec, combo = set(b.support), {idx}
        while vec:
            lead = min(vec)
            if lead not in rows:
                break
            rvec, rcombo = rows[lead]
            vec ^= rvec
            combo ^= rcombo
        if not vec:
            witness: frozenset[str] = frozenset()
            for j in combo:
                witness = witness ^ space_b.basis[j].support
            return SquareClassVector(witness)
        rows[min(vec)] = (frozenset(vec), frozenset(combo))
    return True
