from fractions import Fraction as F
from itertools import combinations

import pytest

from hyperchaos.intervals import DomainError
from hyperchaos.shift_space import (
    BinarySeq,
    SeqSet,
    build_example_N,
    census,
    closed_form,
    example_M,
    hausdorff_seq,
    n_values,
    seq_distance,
    shift,
    shift_set,
    verify_example,
)
from oracles import shift_example_series

ONES = BinarySeq()


def test_shift_examples():
    assert shift(ONES) == ONES
    assert shift(BinarySeq.single(1)) == ONES
    assert shift(BinarySeq.single(3)) == BinarySeq.single(2)


def test_distance_examples():
    x = BinarySeq.single(4)
    assert seq_distance(x, x) == 0
    assert seq_distance(ONES, BinarySeq.single(1)) == 1
    assert seq_distance(ONES, BinarySeq.single(3)) == F(1, 3)


def test_build_example_N():
    assert [x.zeros for x in build_example_N(3)] == [(1,), (3,), (6,)]
    assert build_example_N(1) == SeqSet([BinarySeq.single(1)])
    assert n_values(5) == [0, 2, 5, 9, 14]
    with pytest.raises(DomainError):
        build_example_N(0)


def test_hausdorff_seq_examples():
    n3 = build_example_N(3)
    assert hausdorff_seq(n3, n3) == 0
    assert hausdorff_seq(example_M(), SeqSet([BinarySeq.single(1)])) == 1
    shifted = shift_set(shift_set(shift_set(n3)))
    assert hausdorff_seq(example_M(), shifted) == F(1, 3)


def test_text_round_trip():
    x = BinarySeq((3, 4, 9))
    assert str(x) == "1^2 0 0 1^4 0 1^∞"
    assert BinarySeq.parse(str(x)) == x
    assert BinarySeq.parse("0 1 0 1^inf") == BinarySeq((1, 3))
    with pytest.raises(DomainError):
        BinarySeq.parse("0 1")
    with pytest.raises(DomainError):
        BinarySeq((2, 2))


def test_verify_example_k6():
    rep = verify_example(6, 19)
    assert rep.passed and rep.closed_form_ok and rep.census_asymptotic
    assert list(rep.series) == shift_example_series(6, 19)
    assert [rep.series[t] for t in (0, 2, 5, 9, 14)] == [1] * 5
    assert [rep.series[n + 1] for n in n_values(5)] == [F(1, i + 2) for i in range(5)]


def test_verify_example_k1():
    assert verify_example(1, 0).series == (1,)


def test_truncation_guard():
    with pytest.raises(DomainError):
        verify_example(2, 50)
    # at t = n_(k-1) the last element still has its zero at position 1
    assert verify_example(3, 5).series[-1] == 1


def test_census_pair_example():
    x, y = BinarySeq.single(1), BinarySeq.single(2)
    ds = []
    for _ in range(5):
        ds.append(seq_distance(x, y))
        x, y = shift(x), shift(y)
    assert ds == [1, 1, 0, 0, 0]


def test_closed_form_matches_oracle():
    for k in range(1, 8):
        last = n_values(k)[-1]
        assert [closed_form(k, t) for t in range(last + 1)] == shift_example_series(k, last)


# --- properties --------------------------------------------------------------

POP = census(48) + [BinarySeq((1, 2))]


def test_metric_on_census():
    assert len(POP) <= 50
    for x in POP:
        assert seq_distance(x, x) == 0
    for x, y in combinations(POP, 2):
        assert seq_distance(x, y) == seq_distance(y, x) > 0
    for x in POP[::3]:
        for y in POP[::2]:
            for z in POP[::5]:
                assert seq_distance(x, z) <= seq_distance(x, y) + seq_distance(y, z)


def test_shift_metric_compatibility():
    for x, y in combinations(POP, 2):
        d = seq_distance(x, y)
        i = d.denominator
        if i >= 2:
            assert seq_distance(shift(x), shift(y)) == F(1, i - 1)


def test_no_ly_pairs_on_census():
    for x, y in combinations(census(30), 2):
        ds = []
        for _ in range(40):
            ds.append(seq_distance(x, y))
            x, y = shift(x), shift(y)
        z = ds.index(0)
        assert all(d == 0 for d in ds[z:])


def test_induced_pair_pattern():
    rep = verify_example(6, 20)
    ones = [t for t, d in enumerate(rep.series) if d == 1]
    assert ones == [0, 2, 5, 9, 14, 20]
    assert rep.dips == (F(1, 2), F(1, 3), F(1, 4), F(1, 5), F(1, 6))
