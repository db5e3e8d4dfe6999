"""Named check suites over fragments, collected into a Report."""
from __future__ import annotations

import time
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .. import funcfield as ff
from ..exactfield import GF, is_square, is_sum_of_two_squares, power2_irreducible
from ..symbols import embeds_in_c4
from ..twogroup import (
    ACCEPTANCE_CATALOG,
    D4_FINGERPRINT,
    catalog,
    commutator_subgroup,
    exponent,
    frattini_by_maximal_subgroups,
    named_group,
    nilpotency_class,
    quotient_group,
    structural_checks,
    tower_series,
)
from .closure import galois_closure_quadratic, is_quadratic_ext_galois
from .fragment import TowerFragment, parse_fragment
from .kummer import closure_step_check, kummer_data, lemma1_check, lemma2_check, prop1_check
from .report import Check, Report, SampleResult
from .witnesses import (
    QUADRATICALLY_CLOSED,
    RATIONALS_FIELD,
    REAL_CLOSED,
    classify_field,
    cyclotomic_witness,
    finite_tower_levels,
    frobenius_group,
    function_field_d4,
)

SUITES = ("lemmas", "example1", "prop1", "prop2", "groups")


def _timed(fn: Callable[[], Check]) -> Check:
    t = time.perf_counter()
    c = fn()
    c.seconds = time.perf_counter() - t
    return c


# --------------------------------------------------------------------------- groups
def groups_suite(names: Sequence[str] = ACCEPTANCE_CATALOG) -> Report:
    rep = Report()

    def structural() -> Check:
        samples = []
        for G in catalog(names):
            r = structural_checks(G)
            samples.append(SampleResult(G.name, r.passed, "; ".join(f"{c.name}: {c.passed}" for c in r.checks)))
        return Check("groups-structural", "series is central, exponent and class bounds on quotients",
                     all(s.passed for s in samples), samples=samples)

    def d4_values() -> Check:
        G = named_group("D4")
        s = tower_series(G)
        center = commutator_subgroup(G, G.all(), G.all())
        g2, g3 = s.level(2), s.level(3)
        q2 = quotient_group(G, g2)
        q3 = quotient_group(G, g3)
        values = {
            "G2_order": g2.order,
            "G2_is_center": g2.members == frozenset(
                a for a in range(G.order) if all(G.mul(a, b) == G.mul(b, a) for b in range(G.order))),
            "G3_order": g3.order,
            "G[2]_order": q2.order,
            "G[2]_exponent": exponent(q2),
            "G[3]_exponent": exponent(q3),
            "G[3]_class": nilpotency_class(q3),
            "derived_equals_G2": center.members == g2.members,
        }
        ok = (values["G2_order"] == 2 and values["G2_is_center"] and values["G3_order"] == 1
              and values["G[2]_order"] == 4 and values["G[2]_exponent"] == 2
              and values["G[3]_exponent"] == 4 and values["G[3]_class"] == 2)
        return Check("groups-d4-series", "series of the dihedral group of order 8", ok, witness=values)

    def frattini() -> Check:
        samples = []
        for G in catalog(names):
            phi = frattini_by_maximal_subgroups(G)
            samples.append(SampleResult(G.name, phi.members == tower_series(G).level(2).members))
        return Check("groups-frattini", "G(2) is the intersection of maximal subgroups",
                     all(s.passed for s in samples), samples=samples)

    for fn in (structural, d4_values, frattini):
        rep.add(_timed(fn))
    return rep


# --------------------------------------------------------------------------- lemmas
LEMMA_FRAGMENTS = ("Q{2}", "Q{2,-1}", "Q{5}", "F3")


def lemma3_samples() -> list[tuple[TowerFragment, object]]:
    """Elements k of level-2 fields with K(sqrt k) Galois over L, across three fragments."""
    out = []
    for desc in ("Q{2}", "Q{2,-1}", "Q{5}"):
        f = parse_fragment(desc)
        K = f.level2
        r = K.gen(0)
        cands = [r * v + u for u, v in ((1, 1), (2, 1), (3, 0), (3, 1), (1, 2), (0, 1), (5, 2), (4, 1), (5, 1))]
        if f.dimension > 1:
            i = K.gen(1)
            cands += [i + 1, (i + 1) * r, r + 7]
        for k in cands:
            if k.is_zero() or is_square(k):
                continue
            if is_quadratic_ext_galois(f, k, over=f.generators[0]):
                out.append((f, k))
    return out


def statement_examples() -> Check:
    f = parse_fragment("Q{2}")
    K = f.level2
    r = K.gen()
    cases = [(r + 2, True), (r + 1, False), (K(3), True)]
    samples = [SampleResult(str(k), is_quadratic_ext_galois(f, k) == want, f"expected {want}") for k, want in cases]
    return Check("statement-examples", "K(sqrt a)/F Galois iff sigma(a)/a is a square",
                 all(s.passed for s in samples), samples=samples)


def lemma3_check(samples: Iterable | None = None) -> Check:
    results = []
    d4 = None
    for f, k in samples if samples is not None else lemma3_samples():
        w = galois_closure_quadratic(f, k)
        deg_t = 2 * f.level2.degree
        predicted = deg_t if is_quadratic_ext_galois(f, k) else 2 * deg_t
        ok = w.degree == predicted and w.fingerprint.order == w.degree and w.stable
        results.append(SampleResult(f"{f}: {k}", ok, f"closure degree {w.degree}, predicted {predicted}"))
        if str(f) == "Q{2}" and k == f.level2.gen() + 1:
            d4 = w
    d4_ok = d4 is not None and d4.fingerprint == D4_FINGERPRINT and d4.degree == 8
    return Check("lemma3-dichotomy", "closure is T or a quadratic extension of T",
                 all(s.passed for s in results) and d4_ok and len(results) >= 20,
                 witness=d4, samples=results)


def lemmas_suite(fragments: Iterable[str | TowerFragment] = LEMMA_FRAGMENTS) -> Report:
    rep = Report()
    rep.add(_timed(statement_examples))
    rep.add(_timed(lemma3_check))
    for f in fragments:
        f = parse_fragment(f) if isinstance(f, str) else f
        tag = str(f)

        def j1(f=f) -> Check:
            data = kummer_data(f)
            closed = all(a + b in data.fixed for a in data.fixed.elements() for b in data.fixed.elements())
            return Check("j1", "fixed square classes of the level-2 field", closed,
                         witness={"pool_rank": len(data.basis), "fixed": str(data.fixed)})

        checks = [j1]
        if f.kind == "F" or f.generators:
            checks += [lambda f=f: lemma1_check(f), lambda f=f: lemma2_check(f), lambda f=f: closure_step_check(f)]
        for fn in checks:
            c = _timed(fn)
            c.name = f"{c.name}[{tag}]"
            rep.add(c)
    return rep


# --------------------------------------------------------------------------- proposition 1
PROP1_FRAGMENTS = ("Q{2,-1}", "Q{2}", "Q{5}", "F3")


def prop1_suite(fragments: Iterable[str | TowerFragment] = PROP1_FRAGMENTS) -> Report:
    rep = Report()
    for f in fragments:
        f = parse_fragment(f) if isinstance(f, str) else f
        c = _timed(lambda f=f: prop1_check(f))
        c.name = f"prop1[{f}]"
        rep.add(c)
    return rep


# --------------------------------------------------------------------------- example over C(t)
def example1_suite(
    samples_r: Sequence = ff.DEFAULT_R,
    samples_bc: Sequence = ff.DEFAULT_BC,
    k: ff.ConstantField = ff.GAUSSIAN,
    stress: bool = True,
    attempt_d4: bool = True,
) -> Report:
    rep = Report()

    def claim1(rs, bcs, name) -> Check:
        vacuous = not rs and not bcs
        res = ff.claim1_check(rs, bcs, k)
        return Check(name, "E meets F(2) only in C(t)", res is True,
                     witness="vacuous" if vacuous else (None if res is True else str(res)),
                     samples=[SampleResult(g, True) for g, _ in ff.v_generators(rs, bcs, k)])

    rep.add(_timed(lambda: claim1(list(samples_r), list(samples_bc), "claim1-default")))
    if stress:
        rs, bcs = ff.stress_grid()
        rep.add(_timed(lambda: claim1(rs, bcs, "claim1-stress")))

    def parity() -> Check:
        t = ff.Poly.t(k)
        i = k.root
        # inject t^2+1 = (t-i)(t+i), the only generator that can touch t-i
        injected = ("t^2+1", ff.square_class_of(t * t + 1))
        gens = ff.v_generators(samples_r, samples_bc, k)
        if all(g.vector != injected[1].vector for _, g in gens):
            gens.append(injected)
        odd = ff.irr_label(t + i)
        traces = [ff.parity_trace(gens, q.vector) for q in
                  (ff.square_class_of(t - i) + ff.square_class_of(t + 2 * i), ff.square_class_of(t - i))]
        ok = all(not tr.member and odd in tr.residual.support for tr in traces)
        return Check("claim1-parity-trace", "t+i has odd exponent on one side only", ok,
                     witness=[line for tr in traces for line in tr.lines()])

    def claim2() -> Check:
        d4 = named_group("D4")
        nonabelian = not d4.is_abelian()
        cat = [structural_checks(G).checks[0].passed for G in catalog()]
        return Check("claim2-skeleton", "[G(2),G(2)] inside G(4) while D4 is nonabelian",
                     nonabelian and all(cat), witness={"d4_nonabelian": nonabelian, "catalog_groups": len(cat)})

    rep.add(_timed(parity))
    rep.add(_timed(claim2))
    if attempt_d4 and k == ff.GAUSSIAN:
        def d4() -> Check:
            w = function_field_d4()
            return Check("example1-d4", "dihedral extension over an enlarged constant field", w.passed, witness=w)
        rep.add(_timed(d4))
    return rep


# --------------------------------------------------------------------------- proposition 2
def prop2_suite() -> Report:
    rep = Report()

    def w1() -> Check:
        ok = is_sum_of_two_squares(2) and not is_square(Fraction(2))
        return Check("prop2-W1", "Q is not pythagorean", ok, witness="1 + 1 = 2 is not a square")

    def w2() -> Check:
        return Check("prop2-W2", "Q(sqrt 2) embeds in a cyclic quartic field", embeds_in_c4(2))

    def w3() -> Check:
        w = cyclotomic_witness()
        return Check("prop2-W3", "cyclic octic field containing sqrt 2",
                     w.cyclic_of_degree_8 and w.splits and w.contains_sqrt2, witness=w)

    def w4() -> Check:
        return Check("prop2-W4", "X^16 - 2 is irreducible over Q", power2_irreducible(2, 4))

    def w5() -> Check:
        z16 = tower_series(named_group("Z16"))
        z8 = tower_series(named_group("Z8"))
        e16 = exponent(z16.quotient(5))
        e8 = exponent(z8.quotient(4))
        classes = {G.name: nilpotency_class(tower_series(G).quotient(5)) for G in catalog()}
        exps = {G.name: exponent(tower_series(G).quotient(5)) for G in catalog()}
        ok = e16 == 16 and e8 == 8 and max(classes.values()) <= 4 and all(16 % e == 0 for e in exps.values())
        return Check("prop2-W5", "exponent 16 at level 5, 8 at the level-3 analogue, class at most 4", ok,
                     witness={"Z16_level5_exponent": e16, "Z8_level4_exponent": e8,
                              "max_class_level5": max(classes.values())})

    def w6() -> Check:
        # over F_3: Gal(F(5)/F) = Gal(F_3^16/F_3); the level-3 field of L = F_9 is F_3^8
        e_f5 = exponent(frobenius_group(GF(3, 16), 3))
        e_l3 = exponent(frobenius_group(GF(3, 8), 3))
        return Check("prop2-W6", "finite field: exponents 16 and 8", e_f5 == 16 and e_l3 == 8,
                     witness={"F3_level5_exponent": e_f5, "F3_L_level3_exponent": e_l3})

    def cases() -> Check:
        got = [classify_field(F) for F in (QUADRATICALLY_CLOSED, REAL_CLOSED, RATIONALS_FIELD)]
        ok = [v.case for v in got] == [1, 2, 3]
        return Check("prop2-cases", "trichotomy: quadratically closed, euclidean, otherwise", ok,
                     witness=[v.to_json() for v in got])

    for fn in (w1, w2, w3, w4, w5, w6, cases):
        rep.add(_timed(fn))
    return rep


# --------------------------------------------------------------------------- finite towers
def finite_levels_check(q: int, depth: int = 4) -> Check:
    levels = finite_tower_levels(parse_fragment(f"F{q}"), depth)
    ok = all(lv.j1_full and lv.next_root and lv.fingerprint.order == 2 ** (lv.n - 1)
             and lv.fingerprint.exponent == 2 ** (lv.n - 1) for lv in levels)
    return Check(f"finite-levels[F{q}]", "fixed classes fill the class group; cyclic level groups", ok,
                 samples=[lv.to_json() for lv in levels])


# --------------------------------------------------------------------------- dispatch
def run_suites(suite: str = "all", fragment: str | None = None) -> Report:
    names = SUITES if suite == "all" else (suite,)
    frag = parse_fragment(fragment) if fragment else None
    rep = Report()
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
        if name == "groups":
            rep.extend(groups_suite())
        elif name == "prop2":
            rep.extend(prop2_suite())
        elif name == "lemmas":
            if frag is not None and frag.kind == "FF":
                continue
            rep.extend(lemmas_suite([frag] if frag else LEMMA_FRAGMENTS))
            if frag is None or frag.kind == "F":
                for q in ((frag.q,) if frag else (3, 5)):
                    rep.add(_timed(lambda q=q: finite_levels_check(q)))
        elif name == "prop1":
            if frag is not None and frag.kind == "FF":
                continue
            rep.extend(prop1_suite([frag] if frag else PROP1_FRAGMENTS))
        elif name == "example1":
            if frag is not None and frag.kind != "FF":
                continue
            rep.extend(example1_suite(k=frag.constants if frag else ff.GAUSSIAN))
    return rep


__all__ = [
    "groups_suite", "lemmas_suite", "prop1_suite", "example1_suite", "prop2_suite", "run_suites",
    "lemma3_samples", "lemma3_check", "statement_examples", "finite_levels_check", "SUITES",
]
