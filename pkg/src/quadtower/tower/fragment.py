"""Finite fragments of the tower F = F(1) < F(2) < F(3) < ... over three kinds of base.

* ``Q{a1,...,ad}``: level 2 is Q(sqrt a1, ..., sqrt ad), acted on by sign flips.
* ``Fq``: level n is F_(q^(2^(n-1))), acted on by the q-power Frobenius.
* ``k(t)`` for k = Q, Q(i), Q(sqrt m): only the function-field example runs here.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from ..exactfield import GF, FiniteFieldElement, MultiquadField, is_square, sqrt_exact
from ..funcfield import ConstantField


class FragmentError(ValueError):
    pass


@dataclass(frozen=True)
class TowerFragment:
    kind: str  # "Q", "F" or "FF"
    generators: tuple = ()
    q: int | None = None
    constants: ConstantField | None = field(default=None, compare=False)

    # ----------------------------------------------------------- factories
    @classmethod
    def rational(cls, generators: Iterable[int] = ()) -> TowerFragment:
        gens = tuple(int(a) for a in generators)
        MultiquadField(gens)  # validates squarefree, independent, d <= 3
        return cls("Q", gens)

    @classmethod
    def finite(cls, q: int) -> TowerFragment:
        GF.of_order(q)
        return cls("F", (), q)

    @classmethod
    def function_field(cls, k: ConstantField) -> TowerFragment:
        return cls("FF", (), None, k)

    def __str__(self) -> str:
        if self.kind == "Q":
            return "Q{" + ",".join(map(str, self.generators)) + "}"
        if self.kind == "F":
            return f"F{self.q}"
        return f"{self.constants}(t)"

    # -------------------------------------------------------------- levels
    @property
    def base(self):
        if self.kind == "F":
            return GF.of_order(self.q)
        if self.kind == "Q":
            return MultiquadField(())
        return self.constants

    @property
    def level2(self):
        """The level-2 field of the fragment."""
        if self.kind == "Q":
            return MultiquadField(self.generators)
        if self.kind == "F":
            return self.finite_level(2)
        raise FragmentError("function-field fragments only run the function-field example")

    def finite_level(self, n: int) -> GF:
        """F_(q^(2^(n-1))) for a finite base."""
        self._need("F")
        F = GF.of_order(self.q)
        return GF(F.p, F.e * 2 ** (n - 1))

    @property
    def dimension(self) -> int:
        return len(self.generators) if self.kind == "Q" else 1

    def _need(self, kind: str) -> None:
        if self.kind != kind:
            raise FragmentError(f"operation needs a {kind!r} fragment, got {self}")

    # -------------------------------------------------------------- action
    def action(self, n: int = 2) -> list:
        """The Galois group of the level-n field over the base, as callables.

        Sign flips for a rational base (level 2 only); powers of the q-Frobenius
        for a finite base.
        """
        if self.kind == "Q":
            if n != 2:
                raise FragmentError("rational fragments are materialised at level 2 only")
            return self.level2.automorphisms()
        if self.kind == "F":
            F = self.finite_level(n)
            q = self.q
            m = 2 ** (n - 1)
            return [_Frobenius(F, q, j) for j in range(m)]
        raise FragmentError("function-field fragments carry no materialised action")

    def coerce(self, x):
        """An element of the level-2 field."""
        K = self.level2
        return K(x) if self.kind == "F" else K.coerce(x)

    def subgroup_fixing(self, a) -> list:
        """Elements of the level-2 action fixing sqrt(a), i.e. Gal(K/L) for L = base(sqrt a)."""
        if self.kind == "F":
            # the only quadratic extension of F_q is F_(q^2) = level 2 itself
            return [s for s in self.action() if s.power == 0]
        a = Fraction(a)
        if a == 0 or is_square(a):
            raise FragmentError(f"{a} does not define a quadratic extension")
        K = self.level2
        r = sqrt_exact(K.coerce(a))
        if r is None:
            raise FragmentError(f"sqrt({a}) is not in the level-2 field {K}")
        return [s for s in self.action() if s(r) == r]


@dataclass(frozen=True)
class _Frobenius:
    field: GF
    q: int
    power: int

    def __call__(self, x: FiniteFieldElement) -> FiniteFieldElement:
        return x ** (self.q**self.power)

    def __repr__(self) -> str:
        return f"Frob^{self.power}"


def designated_subfield(fragment: TowerFragment, a=None) -> Fraction | None:
    """The radicand of L; defaults to the first generator."""
    if fragment.kind == "F":
        return None
    if a is None:
        if not fragment.generators:
            raise FragmentError("the fragment has no quadratic subfield")
        return Fraction(fragment.generators[0])
    return Fraction(a)


_Q_RE = re.compile(r"^Q\{([^}]*)\}$")
_F_RE = re.compile(r"^F_?(\d+)$")
_FF_RE = re.compile(r"^(.*)\(t\)$")


def parse_fragment(text: str) -> TowerFragment:
    """``"Q{2,-1}"``, ``"Q"``, ``"F3"``, ``"F_9"``, ``"Q(i)(t)"``, ``"Q(sqrt(2))(t)"``."""
    s = text.replace(" ", "")
    if s == "Q":
        return TowerFragment.rational()
    m = _Q_RE.match(s)
    if m:
        body = m.group(1)
        gens = [int(x) for x in body.split(",") if x] if body else []
        return TowerFragment.rational(gens)
    m = _F_RE.match(s)
    if m:
        return TowerFragment.finite(int(m.group(1)))
    m = _FF_RE.match(s)
    if m:
        return TowerFragment.function_field(ConstantField.parse(m.group(1)))
    raise FragmentError(f"cannot parse fragment descriptor {text!r}")

