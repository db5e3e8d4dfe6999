"""Finite 2-groups as Cayley tables, and the series G^(n+1) = (G^(n))^2 [G^(n), G].

Groups are materialised completely (order <= 1024).  Permutations compose as
functions: ``(g*h)(x) = g(h(x))``.  Commutators are ``[a, b] = a^-1 b^-1 a b``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import lcm
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 1024
MAX_POINTS = 64


class FiniteTwoGroup:
    def __init__(self, table: np.ndarray, identity: int = 0, labels: Sequence[str] | None = None,
                 generators: Sequence[int] | None = None, name: str | None = None,
                 perms: Sequence[tuple[int, ...]] | None = None):
        n = table.shape[0]
        if n > MAX_ORDER:
            raise ValueError(f"group order {n} exceeds {MAX_ORDER}")
        if n & (n - 1):
            raise ValueError(f"order {n} is not a power of 2")
        self.table = table
        self.identity = identity
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        self.name = name or f"group of order {n}"
        self.perms = list(perms) if perms is not None else None
        self._gens = list(generators) if generators is not None else None

    # ------------------------------------------------------------ construction
    @classmethod
    def from_permutations(cls, gens: Sequence[Sequence[int]], name: str | None = None) -> FiniteTwoGroup:
        """Close a list of permutations (0-based image tuples) into a group."""
        if not gens:
            return cls(np.zeros((1, 1), dtype=np.int32), 0, ["()"], [], name or "trivial", [()])
        degree = max(len(g) for g in gens)
        if degree > MAX_POINTS:
            raise ValueError(f"at most {MAX_POINTS} points supported")
        gens = [tuple(g) + tuple(range(len(g), degree)) for g in gens]
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise ValueError(f"{g} is not a permutation")
        ident = tuple(range(degree))
        elems = [ident]
        index = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = tuple(x[s[i]] for i in range(degree))
                    if y not in index:
                        index[y] = len(elems)
                        elems.append(y)
                        nxt.append(y)
                        if len(elems) > MAX_ORDER:
                            raise ValueError(f"group order exceeds {MAX_ORDER}")
            frontier = nxt
        P = np.array(elems, dtype=np.int32)
        table = np.empty((len(elems), len(elems)), dtype=np.int32)
        for i, g in enumerate(P):
            rows = g[P]
            table[i] = [index[tuple(r)] for r in rows.tolist()]
        labels = [format_cycles(e) for e in elems]
        return cls(table, 0, labels, [index[g] for g in gens], name, elems)

    @classmethod
    def from_cycles(cls, text: str, name: str | None = None) -> FiniteTwoGroup:
        return cls.from_permutations(parse_cycles(text), name or text)

    # ------------------------------------------------------------------ basics
    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<FiniteTwoGroup {self.name}, order {self.order}>"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.empty(self.order, dtype=np.int32)
        rows, cols = np.nonzero(self.table == self.identity)
        inv[rows] = cols
        return inv

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def power(self, a: int, n: int) -> int:
        out = self.identity
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def commutator(self, a: int, b: int) -> int:
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        return n

    @cached_property
    def generators(self) -> list[int]:
        if self._gens is not None:
            return self._gens
        gens: list[int] = []
        span = {self.identity}
        for a in range(self.order):
            if a not in span:
                gens.append(a)
                span = _closure(self, gens)
        return gens

    def all(self) -> Subgroup:
        return Subgroup(self, frozenset(range(self.order)))

    def trivial(self) -> Subgroup:
        return Subgroup(self, frozenset({self.identity}))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))


@dataclass(frozen=True)
class Subgroup:
    group: FiniteTwoGroup = field(compare=False, hash=False, repr=False)
    members: frozenset

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return a in self.members

    def __le__(self, other: Subgroup) -> bool:
        return self.members <= other.members

    def __lt__(self, other: Subgroup) -> bool:
        return self.members < other.members

    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def is_normal(self) -> bool:
        G = self.group
        for g in range(G.order):
            gi = G.inv(g)
            for h in self.members:
                if G.mul(G.mul(gi, h), g) not in self.members:
                    return False
        return True

    def labels(self) -> list[str]:
        return sorted(self.group.labels[i] for i in self.members)


def _closure(G: FiniteTwoGroup, seeds: Iterable[int]) -> set[int]:
    seeds = list(set(seeds))
    out = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in seeds:
                y = G.mul(x, s)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def generated_subgroup(G: FiniteTwoGroup, seeds: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``seeds``."""
    seeds = list(seeds)
    for s in seeds:
        if not 0 <= s < G.order:
            raise ValueError(f"{s} is not an element of {G}")
    return Subgroup(G, frozenset(_closure(G, seeds)))


def commutator_subgroup(G: FiniteTwoGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    return generated_subgroup(G, {G.commutator(a, b) for a in A.members for b in B.members})


def _require_normal(H: Subgroup) -> None:
    if not H.is_normal():
        raise ValueError("subgroup is not normal")


def series_step(H: Subgroup, G: FiniteTwoGroup) -> Subgroup:
    """H^2 [H, G]: generated by squares of H and commutators [h, g]."""
    _require_normal(H)
    seeds = {G.mul(h, h) for h in H.members}
    seeds |= {G.commutator(h, g) for h in H.members for g in range(G.order)}
    return generated_subgroup(G, seeds)


def quotient_group(G: FiniteTwoGroup, N: Subgroup) -> FiniteTwoGroup:
    """G/N with the multiplication induced on cosets."""
    _require_normal(N)
    coset_of = np.full(G.order, -1, dtype=np.int32)
    reps: list[int] = []
    for g in range(G.order):
        if coset_of[g] < 0:
            c = len(reps)
            reps.append(g)
            for n in N.members:
                coset_of[G.mul(g, n)] = c
    reps_arr = np.array(reps)
    table = coset_of[G.table[np.ix_(reps_arr, reps_arr)]]
    labels = [G.labels[r] + "N" if N.order > 1 else G.labels[r] for r in reps]
    gens = sorted({int(coset_of[g]) for g in G.generators} - {int(coset_of[G.identity])})
    return FiniteTwoGroup(table.astype(np.int32), int(coset_of[G.identity]), labels, gens,
                          f"{G.name} / (order {N.order})")


def exponent(G: FiniteTwoGroup) -> int:
    return lcm(*(G.element_order(a) for a in range(G.order)))


def lower_central_series(G: FiniteTwoGroup) -> list[Subgroup]:
    series = [G.all()]
    while True:
        nxt = commutator_subgroup(G, series[-1], G.all())
        if nxt.members == series[-1].members:
            return series
        series.append(nxt)


def nilpotency_class(G: FiniteTwoGroup) -> int:
    """Number of steps of the lower central series to reach 1."""
    series = lower_central_series(G)
    if not series[-1].is_trivial():
        raise ArithmeticError("group is not nilpotent")
    return len(series) - 1


def abelian_invariants(G: FiniteTwoGroup) -> tuple[int, ...]:
    """Invariants of the abelianisation, e.g. (2, 4) for Z/2 x Z/4."""
    A = quotient_group(G, commutator_subgroup(G, G.all(), G.all()))
    counts = []
    k = 0
    while True:
        m = sum(1 for a in range(A.order) if A.power(a, 2**k) == A.identity)
        counts.append(m.bit_length() - 1)
        if m == A.order:
            break
        k += 1
    inv = []
    for j in range(1, len(counts)):
        n_ge = counts[j] - counts[j - 1]  # cyclic factors of order >= 2^j
        nxt = counts[j + 1] - counts[j] if j + 1 < len(counts) else 0
        inv += [2**j] * (n_ge - nxt)
    return tuple(sorted(inv))


@dataclass(frozen=True)
class Fingerprint:
    order: int
    exponent: int
    nilpotency_class: int
    abelian_invariants: tuple
    involutions: int  # elements of order exactly 2; separates D4 (5) from Q8 (1)

    @property
    def is_abelian(self) -> bool:
        return self.nilpotency_class <= 1

    @property
    def is_cyclic(self) -> bool:
        return self.exponent == self.order

    def to_json(self) -> dict:
        return {"order": self.order, "exponent": self.exponent, "class": self.nilpotency_class,
                "abelian_invariants": list(self.abelian_invariants), "involutions": self.involutions}

    def __str__(self) -> str:
        return (f"order {self.order}, exponent {self.exponent}, class {self.nilpotency_class}, "
                f"abelianisation {list(self.abelian_invariants)}, {self.involutions} involutions")


def fingerprint(G: FiniteTwoGroup) -> Fingerprint:
    inv = sum(1 for a in range(G.order) if G.element_order(a) == 2)
    return Fingerprint(G.order, exponent(G), nilpotency_class(G), abelian_invariants(G), inv)


D4_FINGERPRINT = Fingerprint(8, 4, 2, (2, 2), 5)
Q8_FINGERPRINT = Fingerprint(8, 4, 2, (2, 2), 1)


def cyclic_fingerprint(n: int) -> Fingerprint:
    return Fingerprint(n, n, 1 if n > 1 else 0, (n,) if n > 1 else (), 1 if n > 1 else 0)


# --------------------------------------------------------------------------- the series
@dataclass
class SeriesLevel:
    n: int
    subgroup: Subgroup
    quotient_order: int
    quotient_exponent: int
    quotient_class: int


@dataclass
class SeriesReport:
    group: FiniteTwoGroup
    levels: list  # SeriesLevel, n = 1, 2, ...

    def level(self, n: int) -> Subgroup:
        """G^(n); the series is constant once it stabilises."""
        if n < 1:
            raise ValueError("levels start at 1")
        return self.levels[min(n, len(self.levels)) - 1].subgroup

    def quotient(self, n: int) -> FiniteTwoGroup:
        return quotient_group(self.group, self.level(n))

    def lines(self) -> list[str]:
        out = [f"{self.group.name}: order {self.group.order}"]
        for lv in self.levels:
            out.append(
                f"  G({lv.n}) order {lv.subgroup.order:>4}   G/G({lv.n}): order {lv.quotient_order:>4}, "
                f"exponent {lv.quotient_exponent}, class {lv.quotient_class}"
            )
        return out

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "order": self.group.order,
            "levels": [
                {"n": lv.n, "subgroup_order": lv.subgroup.order, "quotient_order": lv.quotient_order,
                 "quotient_exponent": lv.quotient_exponent, "quotient_class": lv.quotient_class}
                for lv in self.levels
            ],
        }


def tower_series(G: FiniteTwoGroup) -> SeriesReport:
    """Iterate the series step from G^(1) = G until it is stable."""
    levels = []
    H = G.all()
    n = 1
    while True:
        Q = quotient_group(G, H)
        levels.append(SeriesLevel(n, H, Q.order, exponent(Q), nilpotency_class(Q)))
        nxt = series_step(H, G)
        if nxt.members == H.members:
            return SeriesReport(G, levels)
        H, n = nxt, n + 1


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class StructuralReport:
    group: str
    checks: list  # CheckResult

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def structural_checks(G: FiniteTwoGroup, series: SeriesReport | None = None) -> StructuralReport:
    """[G2,G2] <= G4; [Gn,G] <= G(n+1); exp(G/Gn) | 2^(n-1); class(G/Gn) <= n-1."""
    s = series or tower_series(G)
    depth = len(s.levels) + 1
    out = []
    g2 = s.level(2)
    comm22 = commutator_subgroup(G, g2, g2)
    out.append(CheckResult("[G(2),G(2)] <= G(4)", comm22 <= s.level(4),
                           f"|[G2,G2]| = {comm22.order}, |G4| = {s.level(4).order}"))
    central = []
    for n in range(1, depth + 1):
        c = commutator_subgroup(G, s.level(n), G.all())
        central.append(c <= s.level(n + 1))
    out.append(CheckResult("[G(n),G] <= G(n+1)", all(central), f"levels 1..{depth}"))
    exps, classes = [], []
    for n in range(1, depth + 1):
        Q = s.quotient(n)
        e, c = exponent(Q), nilpotency_class(Q)
        exps.append((2 ** (n - 1)) % e == 0)
        classes.append(c <= n - 1)
    out.append(CheckResult("exp(G/G(n)) | 2^(n-1)", all(exps), f"levels 1..{depth}"))
    out.append(CheckResult("class(G/G(n)) <= n-1", all(classes), f"levels 1..{depth}"))
    return StructuralReport(G.name, out)


def frattini_by_maximal_subgroups(G: FiniteTwoGroup) -> Subgroup:
    """Intersection of all index-2 subgroups, found as kernels of maps G -> Z/2.

    Each candidate map is fixed by its values on the generators, extended
    along words, and kept only if it is a homomorphism on the whole table.
    """
    gens = G.generators
    result = set(range(G.order))
    for bits in product((0, 1), repeat=len(gens)):
        if not any(bits):
            continue
        val = {G.identity: 0}
        frontier = [G.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s, b in zip(gens, bits):
                    y = G.mul(x, s)
                    if y not in val:
                        val[y] = val[x] ^ b
                        nxt.append(y)
            frontier = nxt
        ok = all(val[G.mul(a, b)] == val[a] ^ val[b] for a in range(G.order) for b in range(G.order))
        if ok:
            result &= {a for a, v in val.items() if v == 0}
    return Subgroup(G, frozenset(result))


# --------------------------------------------------------------------------- permutations
def parse_cycles(text: str) -> list[tuple[int, ...]]:
    """``"(1 2 3 4),(1 3)"`` -> list of 0-based image tuples (one per generator)."""
    text = text.strip()
    if not text:
        return []
    gens = []
    for part in re.split(r"\)\s*,\s*\(", text.strip("()")):
        cycles = [[int(x) for x in c.replace(",", " ").split()] for c in re.split(r"\)\s*\(", part)]
        pts = [x for c in cycles for x in c]
        if any(x < 1 for x in pts):
            raise ValueError("points are numbered from 1")
        degree = max(pts, default=0)
        img = list(range(degree))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                img[a - 1] = b - 1
        gens.append(tuple(img))
    degree = max(len(g) for g in gens)
    return [g + tuple(range(len(g), degree)) for g in gens]


def format_cycles(perm: Sequence[int]) -> str:
    seen = set()
    out = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        out.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(out) or "()"


def _affine_mod(n: int, mult: int) -> tuple[int, ...]:
    return tuple((mult * x) % n for x in range(n))


def _shift(perm: Sequence[int], by: int) -> tuple[int, ...]:
    return tuple(range(by)) + tuple(x + by for x in perm)


def _direct(gens_a: list, gens_b: list) -> list:
    da = max(len(g) for g in gens_a)
    pad_a = [tuple(g) + tuple(range(len(g), da)) for g in gens_a]
    db = max(len(g) for g in gens_b)
    ext_a = [g + tuple(range(da, da + db)) for g in pad_a]
    ext_b = [_shift(tuple(g) + tuple(range(len(g), db)), da) for g in gens_b]
    return ext_a + ext_b


def _cyclic(n: int) -> list:
    return [tuple((x + 1) % n for x in range(n))]


def _quaternion_regular() -> list:
    # elements +-1, +-i, +-j, +-k as (sign, unit); left multiplication by i and j
    units = ["1", "i", "j", "k"]
    mult = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for s in (1, -1) for u in units]
    idx = {e: n for n, e in enumerate(elems)}
    gens = []
    for g in ("i", "j"):
        perm = []
        for s, u in elems:
            s2, u2 = mult[(g, u)]
            perm.append(idx[(s * s2, u2)])
        gens.append(tuple(perm))
    return gens


def catalog_generators() -> dict[str, list]:
    d4 = [(1, 2, 3, 0), (2, 1, 0, 3)]  # (1 2 3 4), (1 3)
    q8 = _quaternion_regular()
    rot8 = _cyclic(8)[0]
    return {
        "trivial": [],
        "C2": [(1, 0)],
        "C2^2": _direct([(1, 0)], [(1, 0)]),
        "C2^3": _direct(_direct([(1, 0)], [(1, 0)]), [(1, 0)]),
        "Z2": _cyclic(2),
        "Z4": _cyclic(4),
        "Z8": _cyclic(8),
        "Z16": _cyclic(16),
        "D4": d4,
        "Q8": q8,
        "SD16": [rot8, _affine_mod(8, 3)],
        "M4(2)": [rot8, _affine_mod(8, 5)],
        "D4xC2": _direct(d4, [(1, 0)]),
        "Q8xC2": _direct(q8, [(1, 0)]),
        "Z4xZ4": _direct(_cyclic(4), _cyclic(4)),
    }


ACCEPTANCE_CATALOG = ("C2", "C2^2", "C2^3", "Z2", "Z4", "Z8", "Z16", "D4", "Q8", "SD16", "M4(2)",
                      "D4xC2", "Q8xC2", "Z4xZ4")


def named_group(name: str) -> FiniteTwoGroup:
    gens = catalog_generators()
    aliases = {"Z/2": "Z2", "Z/4": "Z4", "Z/8": "Z8", "Z/16": "Z16", "C4": "Z4", "C8": "Z8", "C16": "Z16",
               "D8": "D4", "Q": "Q8", "M16": "M4(2)", "1": "trivial"}
    key = aliases.get(name, name)
    if key not in gens:
        raise KeyError(f"unknown group {name!r}; known: {', '.join(gens)}")
    return FiniteTwoGroup.from_permutations(gens[key], key)


def catalog(names: Iterable[str] = ACCEPTANCE_CATALOG) -> list[FiniteTwoGroup]:
    return [named_group(n) for n in names]


def group_from_spec(text: str) -> FiniteTwoGroup:
    """A catalog name or a generator list in cycle notation."""
    text = text.strip()
    if "(" in text and not text.startswith("M4"):
        return FiniteTwoGroup.from_cycles(text)
    return named_group(text)
