from fractions import Fraction

import pytest
import sympy as sp
from sympy.polys.numberfields.galoisgroups import galois_group

from oracles import dickson, poly_mul
from quadtower.exactfield import is_square
from quadtower.sqclass import SquareClassVector, membership
from quadtower.tower import (
    ZETA32_PLUS_MINPOLY,
    FragmentError,
    classify_field,
    construct_d4_witness,
    cyclotomic_witness,
    d4_witness_from_point,
    finite_tower_levels,
    function_field_d4,
    galois_closure_quadratic,
    is_quadratic_ext_galois,
    j1_fixed_classes,
    kummer_data,
    lemma3_samples,
    lemma12_check,
    parse_fragment,
    prop1_check,
    prop1_samples,
    run_suites,
)
from quadtower.tower.closure import conic_points
from quadtower.tower.kummer import _label
from quadtower.tower.witnesses import QUADRATICALLY_CLOSED, RATIONALS_FIELD, REAL_CLOSED

X = sp.Symbol("X")
Q2 = parse_fragment("Q{2}")
K2 = Q2.level2
R2 = K2.gen(0)


def test_parse_fragment():
    assert str(parse_fragment("Q{2,-1}")) == "Q{2,-1}"
    assert parse_fragment("F_9").q == 9
    assert parse_fragment("Q(i)(t)").kind == "FF"
    with pytest.raises(FragmentError):
        parse_fragment("R")
    with pytest.raises(ValueError):
        parse_fragment("Q{2,8}")


def test_statement_examples():
    assert is_quadratic_ext_galois(Q2, 2 + R2)
    assert not is_quadratic_ext_galois(Q2, 1 + R2)
    assert is_quadratic_ext_galois(Q2, 3)
    # sigma(2 + sqrt 2)/(2 + sqrt 2) = 3 - 2 sqrt 2 = (sqrt 2 - 1)^2
    s = K2.sign_flip(1)
    assert s(2 + R2) / (2 + R2) == (R2 - 1) ** 2


def test_statement_rejects_degenerate():
    with pytest.raises(ValueError):
        is_quadratic_ext_galois(Q2, 2)
    with pytest.raises(ValueError):
        is_quadratic_ext_galois(Q2, 0)


def test_closure_examples_vs_sympy():
    w = galois_closure_quadratic(Q2, 1 + R2)
    assert (w.degree, w.fingerprint.order, w.fingerprint.exponent, w.fingerprint.nilpotency_class) == (8, 8, 4, 2)
    assert w.fingerprint.involutions == 5 and not w.galois_input
    assert galois_group(sp.Poly(X**4 - 2 * X**2 - 1, X), by_name=True)[0].name == "D4"
    w = galois_closure_quadratic(Q2, 2 + R2)
    assert (w.degree, w.fingerprint.is_cyclic, w.galois_input) == (4, True, True)
    assert galois_group(sp.Poly(X**4 - 4 * X**2 + 2, X), by_name=True)[0].name == "C4"
    w = galois_closure_quadratic(Q2, 3)
    assert (w.degree, w.fingerprint.exponent, w.fingerprint.abelian_invariants) == (4, 2, (2, 2))


def test_lemma3_dichotomy_and_stability():
    samples = lemma3_samples()
    assert len(samples) >= 20
    for frag, k in samples:
        w = galois_closure_quadratic(frag, k)
        base = frag.level2.degree * 2
        galois = is_quadratic_ext_galois(frag, k)
        assert w.degree == (base if galois else 2 * base)
        assert w.fingerprint.order == w.degree and w.stable
        if w.degree == 8:
            assert w.fingerprint.exponent <= 4 and w.fingerprint.nilpotency_class <= 2


def test_closure_requires_galois_over_L():
    frag = parse_fragment("Q{2,-1}")
    K = frag.level2
    # i -> -i sends 1 + sqrt2 i to (1 - sqrt2 i) = (1 + sqrt2 i) * (1 - sqrt2 i)^2 / 3, and 3 is no square
    k = 1 + K.gen(0) * K.gen(1)
    assert not is_quadratic_ext_galois(frag, k, over=2)
    with pytest.raises(ValueError):
        galois_closure_quadratic(frag, k)


def test_d4_witness_2_7():
    w = construct_d4_witness(2, 7)
    assert w.extra["point"] == ["1", "1", "3"] and w.extra["norm"] == "7"
    assert w.degree == 8 and w.extra["dihedral"] and w.extra["contains_sqrt_b"] and w.extra["cyclic_over_sqrt_ab"]
    assert galois_group(sp.Poly((X**2 - 3) ** 2 - 2, X), by_name=True)[0].name == "D4"


def test_d4_witness_rejections():
    with pytest.raises(ValueError):
        construct_d4_witness(2, 3)
    with pytest.raises(ValueError):
        construct_d4_witness(2, 8)


def test_d4_witness_5_minus1():
    for point in ((1, 2, 1), next(conic_points(5, -1))):
        w = d4_witness_from_point(5, -1, point)
        assert w.extra["dihedral"] and w.extra["cyclic_over_sqrt_ab"]
    assert galois_group(sp.Poly((X**2 - 1) ** 2 - 5, X), by_name=True)[0].name == "D4"


def test_j1_examples():
    data = kummer_data(Q2)
    assert data.fixed.dimension >= 1
    fixed = data.fixed
    assert not membership(fixed, SquareClassVector.of(_label(1 + R2)))
    v = SquareClassVector.of(_label(R2), _label(1 + R2))  # [sqrt2 (1 + sqrt2)] = [2 + sqrt 2]
    assert membership(fixed, v)
    assert is_square((2 + R2) / (R2 * (1 + R2)))
    F3 = parse_fragment("F3")
    assert kummer_data(F3).is_full and j1_fixed_classes(F3).dimension == 1
    base = kummer_data(parse_fragment("Q"))
    assert base.is_full


@pytest.mark.parametrize("desc", ["Q{2}", "Q{2,-1}", "Q{5}", "F3", "F5"])
def test_j1_is_subgroup(desc):
    data = kummer_data(parse_fragment(desc))
    elems = {v for _, v in data.fixed_elements}
    assert all(a + b in elems for a in elems for b in elems)


def test_lemma12_examples():
    rep = lemma12_check(parse_fragment("Q{2,-1}"), 2, [(1, 1), (3, 0)])
    assert rep.passed
    s = {x.sample: x for x in rep.checks[0].samples}
    assert not s["1+1*sqrt(2)"].note  # -1/b^2 is a square once i is present
    rep = lemma12_check(Q2, 2, [(1, 1), (3, 0)])
    assert rep.passed and "skipped" in rep.checks[0].samples[0].note
    assert lemma12_check(parse_fragment("F3")).passed


def test_prop1_examples():
    frag = parse_fragment("Q{2,-1}")
    K = frag.level2
    r = K.gen(0)
    c = prop1_check(frag, 2, [2 + r, Fraction(3)])
    assert c.passed
    assert is_quadratic_ext_galois(frag, 2 - r, over=2)
    for desc in ("Q{2}", "Q{2,-1}", "Q{5}", "F3"):
        f = parse_fragment(desc)
        assert prop1_check(f, None, prop1_samples(f)).passed


def test_zeta32_minpoly_regenerated():
    d16 = dickson(16)
    d16[0] += 2
    m = list(ZETA32_PLUS_MINPOLY)
    assert d16 == poly_mul(m, m)
    assert sp.Poly(list(reversed(m)), X).is_irreducible


def test_cyclotomic_witness():
    w = cyclotomic_witness()
    assert w.cyclic_of_degree_8 and w.splits and w.contains_sqrt2


@pytest.mark.parametrize("q", [3, 5, 9])
def test_finite_levels(q):
    levels = finite_tower_levels(parse_fragment(f"F{q}"), 4)
    for lv in levels:
        assert lv.j1_full and lv.next_root
        assert (lv.fingerprint.order, lv.fingerprint.exponent) == (2 ** (lv.n - 1), 2 ** (lv.n - 1))


def test_function_field_d4():
    w = function_field_d4()
    assert w.passed and w.obstruction.startswith("3i")


def test_case_dispatch():
    assert [classify_field(F).case for F in (QUADRATICALLY_CLOSED, REAL_CLOSED, RATIONALS_FIELD)] == [1, 2, 3]


@pytest.mark.parametrize("suite", ["lemmas", "example1", "prop1", "prop2", "groups"])
def test_suites_pass(suite):
    rep = run_suites(suite)
    assert rep.passed, [c.name for c in rep.checks if not c.passed]
    for c in rep.to_json():
        assert set(c) == {"check", "paper_ref", "pass", "witness", "samples"} and c["paper_ref"]


def test_fragment_filters():
    assert all("F3" in c.name or "[" not in c.name for c in run_suites("lemmas", "F3").checks)
    assert run_suites("example1", "Q{2}").checks == []
    assert run_suites("example1", "Q(i)(t)").passed
