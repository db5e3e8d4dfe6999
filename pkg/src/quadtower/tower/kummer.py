"""Fixed square classes of the level-2 field and the inclusion checks built on them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..exactfield import FiniteFieldElement, QElement, is_square, sqrt_exact
from ..sqclass import SquareClassSpace, SquareClassVector
from .closure import is_quadratic_ext_galois
from .fragment import FragmentError, TowerFragment, designated_subfield
from .report import Check, SampleResult

MAX_POOL_RANK = 8


def _label(x) -> str:
    if isinstance(x, FiniteFieldElement):
        return f"alg:{x.text()}@F{x.field.q}"
    return x.field.label(x)


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, QElement) else not x


@dataclass
class KummerData:
    """Greedy F2-basis of a candidate pool, and the classes fixed by the action."""

    pool: list
    basis: list  # independent pool elements
    fixed: SquareClassSpace
    fixed_elements: list  # one representative per fixed class
    ambient_rank: int

    @property
    def is_full(self) -> bool:
        return self.fixed.dimension == self.ambient_rank

    def representative(self, v: SquareClassVector):
        for e, w in self.fixed_elements:
            if w == v:
                return e
        raise KeyError(v)


def _subset_products(basis: Sequence, one) -> list:
    out = []
    for mask in range(1 << len(basis)):
        x = one
        for j, b in enumerate(basis):
            if mask >> j & 1:
                x = x * b
        out.append((mask, x))
    return out


def kummer_data(fragment: TowerFragment, candidates: Iterable | None = None, n: int = 2) -> KummerData:
    if fragment.kind == "F":
        K = fragment.finite_level(n)
        action = fragment.action(n)
        pool = [K(c) for c in candidates] if candidates is not None else [K.one(), K.gen, K.gen * K.gen]
        one = K.one()
    else:
        if n != 2:
            raise FragmentError("rational fragments are materialised at level 2 only")
        K = fragment.level2
        action = fragment.action()
        pool = [fragment.coerce(c) for c in candidates] if candidates is not None else default_pool(fragment)
        one = K.one()
    basis: list = []
    span = [(0, one)]
    for c in pool:
        if _is_zero(c):
            raise ValueError("zero is not a square class")
        if any(is_square(c * e) for _, e in span):
            continue
        if len(basis) == MAX_POOL_RANK:
            raise ValueError(f"candidate pool rank exceeds {MAX_POOL_RANK}")
        basis.append(c)
        span = _subset_products(basis, one)
    labels = [_label(b) for b in basis]
    # ratios s(b)/b per basis element; fixed classes are those whose product ratio is a square
    ratios = [[s(b) / b for s in action] for b in basis]
    fixed_vectors, fixed_elements = [], []
    for mask, e in span:
        r = [one] * len(action)
        for j in range(len(basis)):
            if mask >> j & 1:
                r = [x * y for x, y in zip(r, ratios[j])]
        if all(is_square(x) for x in r):
            v = SquareClassVector(labels[j] for j in range(len(basis)) if mask >> j & 1)
            fixed_vectors.append(v)
            fixed_elements.append((e, v))
    ambient = 1 if fragment.kind == "F" else len(basis)
    return KummerData(pool, basis, SquareClassSpace.span(fixed_vectors), fixed_elements, ambient)


def default_pool(fragment: TowerFragment) -> list:
    """Base classes, the adjoined roots, and small shifts u + sqrt(a_i)."""
    K = fragment.level2
    pool = [K(-1), K(2), K(3), K(5)] + [K(a) for a in fragment.generators]
    for r in K.gens():
        a = (r * r).coords[0]
        pool += [r, r + 1, r + a]
    return [x for x in pool if not is_square(x)]


def j1_fixed_classes(fragment: TowerFragment, candidates: Iterable | None = None, n: int = 2) -> SquareClassSpace:
    """Classes of the candidate pool fixed (mod squares) by the Galois action on level n."""
    return kummer_data(fragment, candidates, n).fixed


def _l_embedding(fragment: TowerFragment, a: Fraction):
    r = sqrt_exact(fragment.coerce(a))
    if r is None:
        raise FragmentError(f"Q(sqrt {a}) is not inside {fragment.level2}")
    return r


def default_l_samples(a: Fraction) -> list[tuple[Fraction, Fraction]]:
    return [(Fraction(1), Fraction(1)), (Fraction(3), Fraction(0)), (a, Fraction(1)),
            (Fraction(3), Fraction(1)), (Fraction(1), Fraction(-2)), (Fraction(5), Fraction(2))]


def lemma1_check(fragment: TowerFragment, L=None, samples: Sequence | None = None) -> Check:
    """Every b in L has s(b)/b a square in the level-2 field: 1 when s fixes L, N(b)/b^2 otherwise.

    Samples whose norm class is outside the fragment are reported as skipped
    (the full level-2 field contains their root; the fragment does not).
    """
    results = []
    if fragment.kind == "F":
        K = fragment.level2
        q = fragment.q
        bs = samples if samples is not None else [K.gen, K.gen + 1, K(2), K.gen ** 3]
        for b in bs:
            b = K(b)
            ok = True
            for s in fragment.action():
                ratio = s(b) / b
                expect = K.one() if s.power == 0 else b ** (q + 1) / (b * b)
                ok &= ratio == expect and is_square(ratio)
            results.append(SampleResult(repr(b), ok))
        return Check("lemma1", "L(2) inside F(3): sigma(b)/b is a square", all(r.passed for r in results),
                     samples=results)
    a = designated_subfield(fragment, L)
    r = _l_embedding(fragment, a)
    for u, v in samples if samples is not None else default_l_samples(a):
        u, v = Fraction(u), Fraction(v)
        b = fragment.coerce(u) + r * v
        norm = u * u - a * v * v
        if b.is_zero():
            continue
        ok, note = True, ""
        for s in fragment.action():
            ratio = s(b) / b
            if s(r) == r:
                ok &= ratio == 1
            else:
                ok &= ratio == fragment.coerce(norm) / (b * b)
                if not is_square(ratio):
                    if is_square(fragment.coerce(norm)):
                        ok = False
                    else:
                        note = f"skipped: norm {norm} has no root in the fragment"
        results.append(SampleResult(f"{u}+{v}*sqrt({a})", ok, note))
    passed = all(x.passed for x in results)
    return Check("lemma1", "L(2) inside F(3): sigma(b)/b is a square", passed, samples=results)


def lemma2_check(fragment: TowerFragment, L=None, data: KummerData | None = None) -> Check:
    """Each fixed class [b] stays fixed under the subgroup fixing L."""
    data = data or kummer_data(fragment)
    H = fragment.subgroup_fixing(designated_subfield(fragment, L))
    results = []
    for e, v in data.fixed_elements:
        ok = all(is_square(h(e) / e) for h in H)
        results.append(SampleResult(str(v), ok))
    return Check("lemma2", "F(3) inside L(3): fixed classes stay fixed over L",
                 all(x.passed for x in results), witness={"fixed_rank": data.fixed.dimension}, samples=results)


def closure_step_check(fragment: TowerFragment, L=None, samples: Sequence | None = None) -> Check:
    """For gamma Galois over L but not over F, gamma*s(gamma) has a fixed class (s moving L)."""
    if fragment.kind == "F":
        return Check("closure-step", "gamma*sigma(gamma) is Galois over F", True,
                     witness="vacuous: every quadratic extension of a finite level is Galois over F")
    a = designated_subfield(fragment, L)
    r = _l_embedding(fragment, a)
    results = []
    for g in samples if samples is not None else prop1_samples(fragment):
        g = fragment.coerce(g)
        if not is_quadratic_ext_galois(fragment, g, over=a):
            raise ValueError(f"sample {g} is not Galois over L")
        for s in fragment.action():
            if s(r) == r:
                continue
            prod = g * s(g)
            ok = is_square(prod) or is_quadratic_ext_galois(fragment, prod)
            results.append(SampleResult(f"{g} * {s(g)}", ok))
            break
    return Check("closure-step", "gamma*sigma(gamma) is Galois over F", all(x.passed for x in results),
                 samples=results)


# --------------------------------------------------------------------------- stability of L(3)
def prop1_samples(fragment: TowerFragment) -> list:
    """Shipped gamma's for each fragment: each makes K(sqrt gamma)/L Galois."""
    if fragment.kind == "F":
        K = fragment.level2
        return [K.gen, K.gen ** 3, K.gen + 1]
    K = fragment.level2
    r = K.gen(0)
    a = (r * r).coords[0]
    cands = [r + a, r + 1, K(3), r + 3, r * 2 + 5]
    if fragment.dimension > 1:
        cands += [K.gen(1) + 1, K.gen(1) + 2]
    out = []
    for g in cands:
        if g.is_zero() or is_square(g):
            continue
        if is_quadratic_ext_galois(fragment, g, over=a):
            out.append(g)
    return out


def prop1_check(fragment: TowerFragment, L=None, samples: Sequence | None = None) -> Check:
    """Every automorphism of the fragment maps Galois-over-L classes to Galois-over-L classes."""
    a = designated_subfield(fragment, L)
    samples = list(samples) if samples is not None else prop1_samples(fragment)
    results = []
    for g in samples:
        g = fragment.coerce(g)
        if not is_quadratic_ext_galois(fragment, g, over=a):
            raise ValueError(f"sample {g} is not Galois over L")
        for s in fragment.action():
            img = s(g)
            ok = is_quadratic_ext_galois(fragment, img, over=a)
            results.append(SampleResult(f"{s!r}: {g} -> {img}", ok))
    return Check("prop1", "L(3)/F is Galois: images of Galois-over-L classes", all(x.passed for x in results),
                 samples=results)

