import random

import pytest
from hypothesis import given, strategies as st

from symparikh.charset import (
    MAX_CHAR, CharPred, minterms, pred_complement, pred_inter, pred_is_empty, pred_sample,
    pred_union,
)
from symparikh.errors import EmptyPredicate

P = CharPred.of


def test_union_examples():
    assert pred_union(P([(97, 97)]), P([(97, 99)])).intervals == ((97, 99),)
    assert pred_union(P([(97, 98)]), P([(100, 101)])).intervals == ((97, 98), (100, 101))
    assert pred_union(P([(97, 98)]), P([(99, 100)])).intervals == ((97, 100),)


def test_inter_examples():
    assert pred_inter(P([(97, 99)]), P([(98, 120)])).intervals == ((98, 99),)
    assert pred_inter(P([(97, 98)]), P([(100, 101)])).intervals == ()
    rng = random.Random(0)
    for _ in range(50):
        lo = rng.randint(0, 200)
        p = CharPred.range(lo, lo + rng.randint(0, 50))
        assert pred_inter(CharPred.top(), p) == p


def test_complement_examples():
    assert pred_complement(P([])).intervals == ((0, MAX_CHAR),)
    assert pred_complement(P([(0, MAX_CHAR)])).intervals == ()
    assert pred_complement(P([(97, 97)])).intervals == ((0, 96), (98, MAX_CHAR))


def test_emptiness_and_sample():
    assert pred_is_empty(P([]))
    assert not pred_is_empty(P([(97, 97)]))
    assert pred_is_empty(pred_inter(P([(0, 96)]), P([(97, 99)])))
    assert pred_sample(P([(97, 99)])) == 97
    assert pred_sample(P([(5, 5), (9, 9)])) == 5
    with pytest.raises(EmptyPredicate):
        pred_sample(P([]))


def test_minterm_examples():
    assert minterms([]) == [CharPred.top()]
    a = P([(97, 97)])
    assert set(minterms([a])) == {a, pred_complement(a)}
    cells = minterms([P([(97, 98)]), P([(98, 99)])])
    assert len(cells) == 4
    assert {P([(97, 97)]), P([(98, 98)]), P([(99, 99)])} <= set(cells)


def test_invalid_intervals_rejected():
    with pytest.raises(ValueError):
        CharPred.range(5, 4)
    with pytest.raises(ValueError):
        CharPred.range(0, MAX_CHAR + 1)


intervals = st.lists(st.tuples(st.integers(0, 60), st.integers(0, 8)), max_size=4).map(
    lambda xs: CharPred.of([(a, a + w) for a, w in xs]))


@given(intervals, intervals)
def test_boolean_laws_pointwise(p, q):
    for c in range(0, 72):
        assert (c in pred_union(p, q)) == (c in p or c in q)
        assert (c in pred_inter(p, q)) == (c in p and c in q)
        assert (c in pred_complement(p)) == (c not in p)
    assert pred_complement(pred_complement(p)) == p


@given(st.lists(intervals, max_size=3))
def test_minterms_partition(preds):
    cells = minterms(preds)
    for c in range(0, 72):
        owners = [m for m in cells if c in m]
        assert len(owners) == 1
        for p in preds:
            # a cell lies entirely inside or outside each predicate
            assert pred_is_empty(pred_inter(owners[0], p)) or pred_is_empty(
                pred_inter(owners[0], pred_complement(p)))
