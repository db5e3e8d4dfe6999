from fractions import Fraction
from itertools import product

import pytest

from oracles import hilbert_oracle, sum_of_two_squares_oracle, witt_oracle_prime
from quadtower.exactfield import is_sum_of_two_squares
from quadtower.symbols import (
    REAL,
    DiagonalForm,
    Place,
    embeds_in_c4,
    embeds_in_d4,
    global_product_check,
    hilbert_symbol,
    relevant_places,
    witt_invariants,
    witt_table_finite_field,
)

GRID = [1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 10, -10]
PLACES = [REAL] + [Place(p) for p in (2, 3, 5, 7, 11, 13)]


def test_spot_values():
    assert hilbert_symbol(-1, -1, REAL) == -1
    assert hilbert_symbol(2, 7, Place(7)) == 1
    assert hilbert_symbol(3, 5, Place(3)) == -1
    assert hilbert_symbol(3, 5, Place(5)) == -1
    assert hilbert_symbol(-1, -1, Place(2)) == -1


def test_spot_values_vs_oracle():
    assert hilbert_oracle(-1, -1, "real") == -1
    assert hilbert_oracle(3, 5, 3) == hilbert_oracle(3, 5, 5) == -1
    assert hilbert_oracle(-1, -1, 2) == -1
    assert hilbert_oracle(2, 7, 7) == 1


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_grid_vs_oracle(p):
    for a, b in product(GRID + [7, -7, 13, Fraction(1, 3), Fraction(-2, 5)], repeat=2):
        assert hilbert_symbol(a, b, Place(p)) == hilbert_oracle(a, b, p), (a, b, p)


def test_real_vs_oracle():
    for a, b in product(GRID, repeat=2):
        assert hilbert_symbol(a, b, REAL) == hilbert_oracle(a, b, "real")


def test_symmetry_and_bilinearity():
    for a, b, c in product(GRID, repeat=3):
        for v in PLACES:
            assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
            assert hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v)


def test_steinberg():
    for a in GRID + [Fraction(1, 2), Fraction(-3, 7), 4, 9]:
        for v in PLACES:
            assert hilbert_symbol(a, -a, v) == 1
            if a != 1:
                assert hilbert_symbol(a, 1 - Fraction(a), v) == 1


def test_product_formula():
    for a, b in product(GRID, repeat=2):
        pc = global_product_check(a, b)
        assert len(pc.negative_places) % 2 == 0 and pc.product == 1


def test_product_examples():
    assert {str(v) for v in global_product_check(3, 5).negative_places} == {"3", "5"}
    assert global_product_check(1, 7).negative_places == []
    assert {str(v) for v in global_product_check(-1, -1).negative_places} == {"real", "2"}


def test_zero_rejected():
    with pytest.raises(ValueError):
        hilbert_symbol(0, 3, REAL)


def test_place_parse():
    assert Place.parse("real") == REAL
    assert Place.parse("7") == Place(7)
    with pytest.raises(ValueError):
        Place.parse("8")
    assert Place(2) in relevant_places(3, 5)


def test_c4_examples():
    assert embeds_in_c4(2) and embeds_in_c4(5)
    assert not embeds_in_c4(3)
    with pytest.raises(ValueError):
        embeds_in_c4(4)


def test_c4_consistency():
    for a in range(-50, 51):
        if a == 0 or Fraction(a) in (1, 4, 9, 16, 25, 36, 49):
            continue
        c4 = embeds_in_c4(a)
        assert c4 == is_sum_of_two_squares(a) == sum_of_two_squares_oracle(a), a
        assert c4 == all(hilbert_symbol(a, -1, v) == 1 for v in relevant_places(a, -1))


def test_d4_examples():
    assert embeds_in_d4(2, 7)
    assert not embeds_in_d4(2, 3)
    with pytest.raises(ValueError):
        embeds_in_d4(2, 4)


def test_d4_equal_classes_fall_back_to_c4():
    # [a] = [b]: (a, a) = (a, -1), so the answer is the cyclic-quartic criterion
    assert embeds_in_d4(-1, -1) is False
    for a in (2, 3, 5, -1, 7, 10):
        assert embeds_in_d4(a, 4 * a) == embeds_in_c4(a)


def test_d4_matches_symbols_on_grid():
    for a, b in product([2, 3, 5, -1, -2, 7, 10, 13], repeat=2):
        expect = all(hilbert_symbol(a, b, v) == 1 for v in relevant_places(a, b))
        assert embeds_in_d4(a, b) == expect


def test_diagonal_form_invariants():
    f = DiagonalForm([1, 1])
    inv = witt_invariants(f)
    assert inv.dimension_mod_2 == 0 and inv.discriminant_class == -1
    assert witt_invariants(DiagonalForm([-1, -1])).hasse_at(REAL) == -1
    with pytest.raises(ValueError):
        DiagonalForm([1, 0])


@pytest.mark.parametrize("q,exp", [(3, 4), (7, 4), (11, 4), (5, 2), (9, 2), (13, 2)])
def test_witt_tables(q, exp):
    W = witt_table_finite_field(q)
    assert (W.size, W.exponent) == (4, exp)
    if q != 9:
        assert witt_oracle_prime(q) == (4, exp)


def test_witt_rejects_even():
    with pytest.raises(ValueError):
        witt_table_finite_field(8)
