import random
from fractions import Fraction as F

import pytest

from hyperchaos.criteria import (
    Params,
    Status,
    check_covering_transitivity,
    check_diam_growth,
    check_f1,
    check_g1,
    classify_chaos,
    construct_hyper_eps_ly_pair,
    construct_hyper_ly_pair,
    find_invariant_transitive_intervals,
)
from hyperchaos.hyperspace import VietorisBox, hausdorff_orbit_stats, induced_orbit, vietoris_member
from hyperchaos.intervals import CompactSet, DomainError, Interval
from hyperchaos.pairs import PairKind, classify_set_pair
from hyperchaos.pl_map import (
    build_flip,
    build_identity,
    build_snoha_example,
    build_swapped_two_hump,
    build_tent,
    build_twin_tent,
    eval_map,
    image_interval,
    power,
    snoha_points,
)
from strategies import random_interval, random_map, random_set

TENT = build_tent()
IDENTITY = build_identity()
FLIP = build_flip()
HALF = F(1, 2)
BOX_U, BOX_V = VietorisBox.parse("(0,1/4)"), VietorisBox.parse("(3/4,1)")

# small parameters keep the wiring checks quick; the acceptance suite runs the defaults
LIGHT = Params(horizon=128, eps=F(1, 4), grid=4, scan_grid=4, cover_grid=4)


def test_check_f1_examples():
    r = check_f1(TENT, Interval(0, F(1, 8)), Interval(F(7, 8), 1))
    assert r.status is Status.PASS
    # f^1 already brings both intervals within distance 0 of each other: [0,1/4] and [0,1/4]
    assert r.witness["n"] == 1
    same = Interval(F(1, 5), F(2, 5))
    assert check_f1(FLIP, same, same).witness == {"n": 0, "dist": "0/1"}


def test_check_f1_identity_fails_with_cycle_certificate():
    r = check_f1(IDENTITY, Interval(0, F(1, 4)), Interval(HALF, 1))
    assert r.status is Status.FAIL
    assert r.witness["certificate"] == "joint_cycle"
    assert r.witness["liminf_dist"] == "1/4"


def test_check_f1_rejects_degenerate():
    with pytest.raises(DomainError):
        check_f1(TENT, Interval(0, 0), Interval(0, 1))


def test_check_diam_growth_examples():
    assert check_diam_growth(TENT, Interval(0, F(1, 2**10)), 64).tail_max == 1
    st = check_diam_growth(IDENTITY, Interval(0, F(1, 4)), 64)
    assert st.tail_min == st.tail_max == F(1, 4)
    assert check_diam_growth(build_snoha_example(0), Interval(0, F(1, 4)), 8, tail_start=1).tail_max == 1


def test_check_g1_examples():
    assert check_g1(IDENTITY, 0, Interval(HALF, F(3, 4))).status is Status.FAIL
    for j in (Interval(0, F(1, 64)), Interval(F(5, 11), F(6, 11)), Interval(F(9, 10), 1)):
        assert check_g1(TENT, F(2, 3), j, 64).status is Status.PASS
    assert check_g1(IDENTITY, F(1, 3), Interval(F(1, 4), HALF)).status is Status.PASS
    with pytest.raises(DomainError):
        check_g1(TENT, HALF, Interval(0, 1))


def test_covering_examples():
    assert check_covering_transitivity(TENT, Interval(0, 1), 5, 64).status is Status.PASS
    assert check_covering_transitivity(IDENTITY, Interval(0, 1), 5, 64).status is Status.FAIL
    a4 = snoha_points(4)[0]
    assert check_covering_transitivity(build_snoha_example(3), Interval(a4, 1), 5, 64).status is Status.FAIL
    with pytest.raises(DomainError):
        check_covering_transitivity(TENT, Interval(0, HALF))


def test_transitive_interval_examples():
    rep = find_invariant_transitive_intervals(TENT)
    assert rep.intervals == [Interval(0, 1)] and rep.dichotomy == "all_powers_transitive"
    assert find_invariant_transitive_intervals(IDENTITY).entries == ()
    flip = find_invariant_transitive_intervals(FLIP)
    assert flip.intervals == [Interval(0, 1)] and flip.dichotomy == "two_swapped_halves(1/2)"
    # the swap is exact, but the square map is the identity and so not transitive
    assert flip.entries[0].transitive is Status.FAIL
    two = find_invariant_transitive_intervals(build_swapped_two_hump())
    assert two.dichotomy == "two_swapped_halves(1/2)" and two.entries[0].transitive is Status.PASS


def test_reported_intervals_are_invariant():
    for m in (TENT, FLIP, build_swapped_two_hump(), build_twin_tent(), build_snoha_example(2)):
        for e in find_invariant_transitive_intervals(m).entries:
            assert e.interval.contains_interval(image_interval(m, e.interval))


def test_dichotomy_soundness():
    for m in (FLIP, build_swapped_two_hump()):
        for e in find_invariant_transitive_intervals(m).entries:
            if e.swap_point is not None:
                y, t = e.swap_point, e.interval
                assert eval_map(m, y) == y
                assert image_interval(m, Interval(t.lo, y)) == Interval(y, t.hi)
                assert image_interval(m, Interval(y, t.hi)) == Interval(t.lo, y)


def test_check_f1_pass_monotone_in_horizon():
    rng = random.Random(17)
    for _ in range(100):
        m = random_map(rng, 8)
        j1, j2 = random_interval(rng), random_interval(rng)
        if j1.degenerate or j2.degenerate:
            continue
        short = check_f1(m, j1, j2, 16)
        if short.status is Status.PASS:
            long = check_f1(m, j1, j2, 64)
            assert long.status is Status.PASS and long.witness == short.witness
        if short.status is Status.FAIL:
            assert check_f1(m, j1, j2, 64).status is Status.FAIL


def test_square_map_consistency():
    # d_H under f at time n is at most L times the distance at n - 1, so the f^2 orbit
    # sees every close approach of the f orbit up to the factor L = max |slope|
    rng = random.Random(23)
    maps = [TENT, build_twin_tent(), build_snoha_example(1)]
    for i in range(50):
        m = maps[i % len(maps)]
        g, lip = power(m, 2), max(m.lipschitz, 1)
        a, b = random_set(rng, 2, 30), random_set(rng, 2, 30)
        sf = hausdorff_orbit_stats(m, a, b, 64, 32)
        sg = hausdorff_orbit_stats(g, a, b, 32, 16)
        for tol in (F(1, 2**20), F(1, 64), F(1, 8), sf.tail_min, sg.tail_min):
            if sg.tail_min <= tol:
                assert sf.tail_min <= tol
            if sf.tail_min <= tol:
                assert sg.tail_min <= lip * tol


def _check_wiring(v):
    s = v.statuses
    if s["dense"] is Status.FAIL:
        assert set(s.values()) == {Status.FAIL}
    if s["generic"] is Status.FAIL:
        assert s["generic_eps"] is Status.FAIL
    if s["dense_eps"] is Status.FAIL:
        assert s["generic_eps"] is Status.FAIL
    if s["generic_eps"] is Status.PASS:
        assert s["generic"] is Status.PASS and s["dense_eps"] is Status.PASS
    if s["dense_eps"] is Status.PASS:
        assert s["dense"] is Status.PASS
    if s["generic"] is Status.PASS:
        assert s["dense"] is Status.PASS


@pytest.mark.parametrize("name", ["tent", "identity", "flip", "two-hump", "twin-tent", "snoha2"])
def test_equivalence_wiring(name):
    m = {"tent": TENT, "identity": IDENTITY, "flip": FLIP, "two-hump": build_swapped_two_hump(),
         "twin-tent": build_twin_tent(), "snoha2": build_snoha_example(2)}[name]
    v = classify_chaos(m, LIGHT)
    _check_wiring(v)
    assert set(v.evidence) >= {"f1", "f2", "g1", "g2", "h1", "h2", "dense_a", "dense_b", "dense_c", "dense_eps"}


def test_wiring_random_maps():
    rng = random.Random(31)
    for _ in range(6):
        _check_wiring(classify_chaos(random_map(rng, 5, 8), LIGHT))


def test_identity_all_fail():
    v = classify_chaos(IDENTITY, LIGHT)
    assert set(v.statuses.values()) == {Status.FAIL}


def test_verdict_json_stable():
    a = classify_chaos(FLIP, LIGHT).to_json()
    b = classify_chaos(build_flip(), LIGHT).to_json()
    assert a == b


def test_params_validation():
    with pytest.raises(DomainError):
        Params(eps=F(3, 2))
    with pytest.raises(DomainError):
        Params(tol_low=F(1, 4))
    with pytest.raises(DomainError):
        Params(horizon=2)


# --- constructors ------------------------------------------------------------


def _self_verifying(res, box_u, box_v, m, horizon, want):
    assert res.found
    assert vietoris_member(res.U, box_u) and vietoris_member(res.V, box_v)
    v = classify_set_pair(m, res.U, res.V, horizon, eps=res.verdict.eps)
    assert v.kind.rank >= want.rank


def test_ly_construction_tent():
    res = construct_hyper_ly_pair(TENT, BOX_U, BOX_V, Params(eps=HALF))
    _self_verifying(res, BOX_U, BOX_V, TENT, 512, PairKind.LY)
    assert len(res.U.parts) <= 2 and len(res.V.parts) <= 2 and res.U.is_finite and res.V.is_finite
    assert res.verdict.kind is PairKind.EPS_LY
    assert [t.stage for t in res.trace][:3] == ["start", "delta", "k-search"]


def test_ly_construction_case3_on_full_box():
    full = VietorisBox.parse("(0,1)")
    res = construct_hyper_ly_pair(TENT, full, full, Params(eps=HALF))
    _self_verifying(res, full, full, TENT, 512, PairKind.LY)
    assert res.case == "case3"
    k = next(t.detail["k"] for t in res.trace if t.stage == "k-search")
    verify = next(t.detail for t in res.trace if t.stage == "verify")
    assert induced_orbit(TENT, res.U, k)[-1] == CompactSet.parse(verify["s"])
    assert induced_orbit(TENT, res.V, k)[-1] == CompactSet.parse(verify["p"])


def test_ly_construction_identity_not_found():
    res = construct_hyper_ly_pair(IDENTITY, BOX_U, BOX_V, Params(eps=HALF))
    assert not res.found and res.failed_stage == "k-search"
    assert '"failed_stage": "k-search"' in res.to_json()


@pytest.mark.parametrize("case,boxes", [
    ("case1", ("(1/8,3/8);(5/8,7/8)", "(1/16,1/4);(3/4,15/16)")),
    ("case2", ("(1/8,3/8)", "(5/8,7/8)")),
    ("case3", ("(1/8,3/8)", "(1/16,1/4)")),
])
def test_twin_tent_cases(case, boxes):
    m = build_twin_tent()
    bu, bv = VietorisBox.parse(boxes[0]), VietorisBox.parse(boxes[1])
    res = construct_hyper_eps_ly_pair(m, bu, bv, F(1, 4), Params(horizon=256))
    _self_verifying(res, bu, bv, m, 256, PairKind.EPS_LY)
    assert res.branch == "two_intervals"
    assert res.case == case


def test_eps_construction_tent():
    res = construct_hyper_eps_ly_pair(TENT, BOX_U, BOX_V, HALF)
    _self_verifying(res, BOX_U, BOX_V, TENT, 512, PairKind.EPS_LY)
    assert res.branch == "all_powers_transitive"


def test_eps_construction_flip_fails_precondition():
    res = construct_hyper_eps_ly_pair(FLIP, BOX_U, BOX_V, HALF)
    assert not res.found and res.failed_stage == "precondition"


def test_eps_construction_square_map_branch():
    m = build_swapped_two_hump()
    assert image_interval(m, Interval(0, HALF)) == Interval(HALF, 1)
    assert image_interval(m, Interval(HALF, 1)) == Interval(0, HALF)
    res = construct_hyper_eps_ly_pair(m, BOX_U, BOX_V, F(1, 4))
    _self_verifying(res, BOX_U, BOX_V, m, 512, PairKind.EPS_LY)
    assert res.branch == "square_map"
