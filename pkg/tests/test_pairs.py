import random
from fractions import Fraction as F

import pytest
from hypothesis import given

from hyperchaos.hyperspace import VietorisBox
from hyperchaos.intervals import CompactSet, DomainError, Interval
from hyperchaos.pairs import (
    PairKind,
    classify_point_pair,
    classify_set_pair,
    classify_stats,
    scan_hyper_pairs,
    scan_pairs,
)
from hyperchaos.pl_map import build_identity, build_snoha_example, build_tent, point_orbit
from hyperchaos.stats import OrbitStats
from strategies import random_map, random_rational, unit_rationals

TENT = build_tent()
IDENTITY = build_identity()
HALF = F(1, 2)
cs = CompactSet.parse


def stats(*ds, tail_start=0):
    return OrbitStats.from_distances([F(d) for d in ds], tail_start)


def test_point_pair_examples():
    assert classify_point_pair(TENT, F(1, 5), F(1, 5), eps=HALF).kind is PairKind.ASYMPTOTIC
    assert classify_point_pair(IDENTITY, 0, 1, eps=HALF).kind is PairKind.DISTAL
    assert classify_point_pair(TENT, F(1, 4), F(3, 4), eps=HALF).kind is PairKind.ASYMPTOTIC


def test_set_pair_examples():
    a = cs("1/5..2/7")
    assert classify_set_pair(TENT, a, a, eps=HALF).kind is PairKind.ASYMPTOTIC
    assert classify_set_pair(IDENTITY, cs("0"), cs("1"), eps=HALF).kind is PairKind.DISTAL
    assert classify_set_pair(TENT, cs("1/4;3/4"), cs("1/2"), eps=HALF).kind is PairKind.ASYMPTOTIC


def test_eps_is_required():
    with pytest.raises(DomainError):
        classify_point_pair(TENT, 0, 1)
    with pytest.raises(DomainError):
        classify_point_pair(TENT, 0, 1, tol_low=HALF, eps=F(1, 4))


def test_rules_are_ordered():
    tol, eps = F(1, 100), F(1, 4)
    # a close approach followed by a large separation
    assert classify_stats(stats(1, F(1, 1000), HALF), tol, eps) is PairKind.EPS_LY
    assert classify_stats(stats(1, F(1, 1000), F(1, 10)), tol, eps) is PairKind.LY
    # large values only before the close approach: no later separation is seen
    assert classify_stats(stats(1, F(1, 10), F(1, 1000)), tol, eps) is PairKind.UNDETERMINED
    assert classify_stats(stats(HALF, HALF, HALF), tol, eps) is PairKind.DISTAL
    assert classify_stats(stats(F(1, 200), F(1, 300)), tol, eps) is PairKind.ASYMPTOTIC
    assert classify_stats(stats(1, 0, 1), tol, eps) is PairKind.ASYMPTOTIC


def test_strictly_decreasing_tail_is_undetermined():
    assert classify_stats(stats(F(1, 2), F(1, 3), F(1, 4)), F(1, 100), F(1, 8)) is PairKind.UNDETERMINED


def test_scan_identity_has_no_ly():
    rep = scan_pairs(IDENTITY, (Interval(0, 1), Interval(0, 1)), 4, 64, eps=HALF)
    assert rep.ly_fraction == 0
    assert set(rep.counts) >= {"asymptotic", "distal"}
    assert rep.counts["LY"] == rep.counts["eps_LY"] == rep.counts["undetermined"] == 0


def test_scan_tent_full_eps_ly():
    rep = scan_pairs(TENT, (Interval(0, 1), Interval(0, 1)), 8, 200, eps=HALF)
    assert rep.eps_ly_fraction == 1
    # spot-check two reported pairs by direct orbit computation
    for row in rep.rows[:: len(rep.rows) // 2][:2]:
        x, y = row.best.pair
        dx, dy = point_orbit(TENT, x, 200), point_orbit(TENT, y, 200)
        tail = [abs(a - b) for a, b in zip(dx, dy)][100:]
        assert min(tail) <= F(1, 2**20) and max(tail) > HALF


def test_scan_snoha_tail_region_no_eps_ly():
    s = build_snoha_example(6)
    region = (Interval(F(26, 27), 1), Interval(F(26, 27), 1))
    rep = scan_pairs(s, region, 8, 128, eps=F(1, 4))
    assert rep.eps_ly_fraction == 0
    assert all(r.tail_max < F(1, 4) for r in rep.rows)


def test_scan_rejects_degenerate_region():
    with pytest.raises(DomainError):
        scan_pairs(TENT, (Interval(0, 0), Interval(0, 1)), 2, eps=HALF)


def test_scan_hyper_pairs():
    boxes = (VietorisBox.parse("(0,1/4)"), VietorisBox.parse("(1/2,1)"))
    assert scan_hyper_pairs(IDENTITY, boxes, 4, 64, eps=HALF).ly_fraction == 0
    rep = scan_hyper_pairs(TENT, boxes, 4, 256, eps=HALF)
    assert rep.eps_ly_fraction > 0
    row = rep.ly_rows()[0]
    again = classify_set_pair(TENT, *row.best.pair, 256, eps=HALF)
    assert again.kind is row.best.kind


def test_identical_singletons_are_asymptotic():
    box = (VietorisBox.parse("(1/3,1/2)"), VietorisBox.parse("(1/3,1/2)"))
    rep = scan_hyper_pairs(TENT, box, 1, 64, eps=HALF, construct=False)
    assert [r.best.kind for r in rep.rows] == [PairKind.ASYMPTOTIC]


def test_scan_deterministic():
    args = (TENT, (Interval(0, HALF), Interval(HALF, 1)), 4, 128)
    assert scan_pairs(*args, eps=HALF).to_csv() == scan_pairs(*args, eps=HALF).to_csv()


# --- properties --------------------------------------------------------------


@given(unit_rationals(), unit_rationals())
def test_symmetry(x, y):
    a = classify_point_pair(TENT, x, y, 64, eps=HALF)
    b = classify_point_pair(TENT, y, x, 64, eps=HALF)
    assert (a.kind, a.stats) == (b.kind, b.stats)
    sa = classify_set_pair(TENT, CompactSet.points(x), CompactSet.points(x, y), 64, eps=HALF)
    sb = classify_set_pair(TENT, CompactSet.points(x, y), CompactSet.points(x), 64, eps=HALF)
    assert (sa.kind, sa.stats) == (sb.kind, sb.stats)


@given(unit_rationals(), unit_rationals())
def test_singleton_consistency(x, y):
    p = classify_point_pair(TENT, x, y, 64, eps=F(1, 3))
    s = classify_set_pair(TENT, CompactSet.points(x), CompactSet.points(y), 64, eps=F(1, 3))
    assert p.kind is s.kind and p.stats.distances == s.stats.distances


def test_eps_monotonicity():
    rng = random.Random(3)
    for _ in range(200):
        m = random_map(rng, 6)
        x, y = random_rational(rng), random_rational(rng)
        st = classify_point_pair(m, x, y, 48, eps=HALF).stats
        for e1 in (F(1, 2), F(1, 4), F(1, 8)):
            if classify_stats(st, F(1, 2**20), e1) is PairKind.EPS_LY:
                for e2 in (e1 / 2, e1 / 3, F(1, 2**19)):
                    assert classify_stats(st, F(1, 2**20), e2) is PairKind.EPS_LY


def test_horizon_monotonicity():
    # with tail_start fixed, a longer horizon never turns asymptotic into distal, and turns distal
    # into asymptotic only through an exact merge of the two orbits after the shorter horizon
    rng = random.Random(5)
    for _ in range(200):
        m = random_map(rng, 6)
        x, y = random_rational(rng), random_rational(rng)
        short = classify_point_pair(m, x, y, 20, eps=HALF, tail_start=10)
        long = classify_point_pair(m, x, y, 60, eps=HALF, tail_start=10)
        if short.kind is PairKind.ASYMPTOTIC:
            assert long.kind is PairKind.ASYMPTOTIC
        if short.kind is PairKind.DISTAL and long.kind is PairKind.ASYMPTOTIC:
            assert long.stats.first_zero() > 20


def test_late_merge_refines_distal():
    # 1/3 and 1/12 under the tent: distances 1/4, 1/2, 1/3, then 0 at the fixed point 2/3
    short = classify_point_pair(TENT, F(1, 3), F(1, 12), 2, eps=HALF, tail_start=0)
    long = classify_point_pair(TENT, F(1, 3), F(1, 12), 8, eps=HALF, tail_start=0)
    assert (short.kind, long.kind) == (PairKind.DISTAL, PairKind.ASYMPTOTIC)
