from hypothesis import given
from hypothesis import strategies as st

from oracles import intersection_oracle, span_sets
from quadtower.sqclass import (
    SquareClassSpace,
    SquareClassVector as V,
    coordinates,
    insert_and_test_independent,
    intersection_trivial,
    membership,
)

LABELS = [f"p:{p}" for p in (2, 3, 5, 7, 11, 13)]
vectors = st.frozensets(st.sampled_from(LABELS)).map(V)
spaces = st.lists(vectors, max_size=6).map(SquareClassSpace.span)


def test_insert_examples():
    S = SquareClassSpace.span([V.of("p:2"), V.of("p:3")])
    assert insert_and_test_independent(S, V.of("p:2", "p:3"))[1] is False
    assert insert_and_test_independent(S, V.of("p:5"))[1] is True
    assert insert_and_test_independent(SquareClassSpace(), V())[1] is False


def test_membership_examples():
    W = SquareClassSpace.span([V.of("irr:t-i"), V.of("irr:t+2*i")])
    assert membership(W, V.of("irr:t-i", "irr:t+2*i"))
    assert not membership(W, V.of("irr:t+i"))
    assert membership(SquareClassSpace(), V())


def test_intersection_examples():
    W = SquareClassSpace.span([V.of("irr:t-i"), V.of("irr:t+2*i")])
    Vs = SquareClassSpace.span([V.of("irr:t+1"), V.of("irr:t-2")])
    assert intersection_trivial(W, Vs) is True
    A = SquareClassSpace.span([V.of("p:2"), V.of("p:3")])
    B = SquareClassSpace.span([V.of("p:2", "p:3"), V.of("p:5")])
    assert intersection_trivial(A, B) == V.of("p:2", "p:3")
    assert intersection_trivial(SquareClassSpace(), B) is True


def test_echelon_pivots_unique():
    S = SquareClassSpace.span([V.of("p:2", "p:3"), V.of("p:3", "p:5"), V.of("p:2", "p:7")])
    for b in S.basis:
        others = [c for c in S.basis if c is not b]
        assert all(b.leading not in c.support for c in others)


def test_coordinates_roundtrip():
    S = SquareClassSpace.span([V.of("p:2", "p:3"), V.of("p:5")])
    assert coordinates(S, V.of("p:2", "p:3", "p:5")) == (1, 1)
    assert coordinates(S, V.of("p:7")) is None


@given(spaces, vectors)
def test_insert_then_member(S, v):
    T, _ = insert_and_test_independent(S, v)
    assert membership(T, v)


@given(spaces, vectors)
def test_insert_idempotent(S, v):
    T, _ = insert_and_test_independent(S, v)
    U, flag = insert_and_test_independent(T, v)
    assert flag is False and set(U.elements()) == set(T.elements())


@given(spaces, vectors)
def test_dimension_grows_by_flag(S, v):
    T, flag = insert_and_test_independent(S, v)
    assert T.dimension == S.dimension + (1 if flag else 0)


@given(spaces, vectors)
def test_membership_matches_enumeration(S, v):
    assert membership(S, v) == (v.support in span_sets([b.support for b in S.basis]))


@given(spaces, spaces)
def test_intersection_matches_enumeration(A, B):
    res = intersection_trivial(A, B)
    common = intersection_oracle([b.support for b in A.basis], [b.support for b in B.basis])
    joint = SquareClassSpace.span(list(A.basis) + list(B.basis))
    assert (res is True) == (not common) == (A.dimension + B.dimension == joint.dimension)
    if res is not True:
        assert res.support in common
