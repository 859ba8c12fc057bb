import numpy as np
import pytest

from toriplan import sphere as sph
from toriplan.complex import from_facets, full_simplex, skeleton, to_mask
from toriplan.planner import (
    LiteralPlanner,
    PlannerError,
    PointNotInComplex,
    ProductPlanner,
    SafePlanner,
    classify_even,
    classify_odd,
    full_planner,
    membership,
    plan_full_even,
    plan_full_odd,
    plan_literal_batch,
    plan_restricted_literal,
    plan_safe,
)
from toriplan.sampling import PairSampler
from toriplan.verify import draw_pairs, verify_containment, verify_endpoints_continuity, verify_partition

FIG8 = from_facets(2, [[1], [2]])
E2 = sph.basepoint(2)
E3 = sph.basepoint(3)


def pt(*angles):
    return np.array([sph.angle_point(a) for a in angles])


class TestClassify:
    def test_one_antipodal(self):
        dom = classify_odd(pt(0, 0), pt(np.pi, np.pi / 2))
        assert dom.index == (to_mask([1]),) and dom.stratum == 1

    def test_equal(self):
        x = pt(0.3, 1.2, 2.0)
        assert classify_odd(x, x).stratum == 3

    def test_all_antipodal(self):
        x = pt(0.3, 1.2)
        dom = classify_odd(x, -x)
        assert dom.index == (0b11,) and dom.stratum == 0

    def test_even_labels(self):
        x = np.array([E3])
        assert classify_even(x, -x).index == (0,)
        p = np.array([[0.0, 0.6, 0.8]])
        assert classify_even(p, -p).index == (1,)
        assert classify_even(p, np.array([E3])).index == (2,)


class TestFullPlanners:
    def test_semicircle_coordinate(self):
        res = plan_full_odd(pt(0), pt(np.pi))
        mid = res.path(0.5)[0, 0]
        assert np.allclose(mid, sph.angle_point(np.pi / 2))

    def test_constant_coordinate(self):
        x = pt(0.0, 1.0)
        y = pt(np.pi, 1.0)
        pts = plan_full_odd(x, y).path(np.linspace(0, 1, 9))
        assert np.array_equal(pts[:, 1], np.tile(x[1], (9, 1)))

    def test_even_meridian(self):
        res = plan_full_even(np.array([E3]), np.array([-E3]))
        assert res.domain.index == (0,) and res.domain.stratum == 0
        assert np.allclose(res.path(0.5)[0, 0], [0, 1, 0])

    def test_endpoints(self):
        rng = np.random.default_rng(0)
        for x, y in PairSampler(full_simplex(3), 2).pairs(rng, 200):
            res = plan_full_odd(x, y)
            assert np.array_equal(res.path(0.0)[0], x) and np.array_equal(res.path(1.0)[0], y)

    def test_parity_mismatch(self):
        with pytest.raises(PlannerError):
            plan_full_odd(np.array([E3]), np.array([E3]))


class TestBatch:
    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_agrees_with_per_pair(self, m):
        rng = np.random.default_rng(m)
        pairs = PairSampler(full_simplex(3), m).pairs(rng, 100, directed_fraction=0.7)
        x = np.array([p[0] for p in pairs])
        y = np.array([p[1] for p in pairs])
        ts = np.linspace(0, 1, 33)
        batch = plan_literal_batch(x, y)
        pts = batch(ts)
        plan = plan_full_odd if m % 2 == 0 else plan_full_even
        for i in range(len(pairs)):
            res = plan(x[i], y[i])
            assert res.domain.stratum == batch.strata()[i]
            assert np.abs(res.path(ts) - pts[i]).max() < 1e-12


class TestRestrictedLiteral:
    def test_full_torus_matches(self):
        x, y = pt(0.1, 2.0), pt(3.0, 5.0)
        a = plan_restricted_literal(full_simplex(2), x, y).path(np.linspace(0, 1, 17))
        b = plan_full_odd(x, y).path(np.linspace(0, 1, 17))
        assert np.array_equal(a, b)

    def test_figure_eight_leaves(self):
        x, y = pt(np.pi / 2, 0), pt(0, np.pi / 2)
        res = plan_restricted_literal(FIG8, x, y)
        assert res.domain.index == (0,)
        assert not membership(FIG8, res.path(0.5)[0])

    def test_same_point_constant(self):
        x = pt(1.0, 0)
        pts = plan_restricted_literal(FIG8, x, x).path(np.linspace(0, 1, 9))
        assert all(membership(FIG8, p) for p in pts)

    def test_not_in_complex(self):
        with pytest.raises(PointNotInComplex):
            plan_restricted_literal(FIG8, pt(1, 1), pt(0, 0))


class TestSafe:
    def test_figure_eight_contained(self):
        x, y = pt(np.pi / 2, 0), pt(0, np.pi / 2)
        res = plan_safe(FIG8, x, y)
        pts = res.path(np.linspace(0, 1, 257))
        assert all(membership(FIG8, p) for p in pts)
        assert np.allclose(res.path(0.5)[0], np.tile(E2, (2, 1)))

    def test_basepoint_constant(self):
        b = np.tile(E2, (3, 1))
        res = plan_safe(full_simplex(3), b, b)
        assert res.domain.stratum == 0
        assert np.array_equal(res.path(np.linspace(0, 1, 5)), np.tile(b, (5, 1, 1)))

    def test_max_stratum(self):
        m = np.tile(-E2, (2, 1))
        assert plan_safe(full_simplex(2), m, m).domain.stratum == 4

    def test_domain_count(self):
        assert SafePlanner(skeleton(5, 2)).domain_count() == 5


class TestMembership:
    def test_cases(self):
        assert membership(FIG8, pt(np.pi / 3, 0))
        assert not membership(FIG8, pt(np.pi / 3, np.pi / 3))
        assert membership(skeleton(4, 1), np.tile(E2, (4, 1)))


def test_product_planner_adds_strata():
    P = ProductPlanner(full_planner(2), full_planner(1))
    x, y = pt(0, 0, 0), pt(np.pi, 1, np.pi)
    assert P.plan(x, y).domain.stratum == 1
    assert P.domain_count() == 4


class TestVerifiers:
    def test_partition_full_torus(self):
        rep = verify_partition(full_planner(3), samples=2000, seed=1)
        assert rep.passed and rep.nonempty_strata == 4

    def test_partition_even(self):
        rep = verify_partition(full_planner(2, "even"), samples=3000, seed=1)
        assert not rep.ambiguous and set(rep.strata) == {0, 1, 2, 3, 4}

    def test_skeleton_floor(self):
        rep = verify_partition(LiteralPlanner(skeleton(5, 2)), samples=2000, seed=2)
        assert min(rep.strata) >= 1 and not rep.bound_violations

    def test_safe_contained(self):
        assert verify_containment(SafePlanner(skeleton(4, 2)), samples=300, seed=3).passed

    def test_literal_union_closed_contained(self):
        assert verify_containment(LiteralPlanner(from_facets(4, [[1, 3]])), samples=300, seed=3).passed

    def test_literal_figure_eight_flagged(self):
        lit = LiteralPlanner(FIG8)
        rep = verify_containment(lit, pairs=draw_pairs(lit, 300, 0, directed_fraction=1.0))
        assert rep.violating_pairs > 0
        assert rep.violations[0]["support"] == [1, 2]

    def test_lipschitz(self):
        rep = verify_endpoints_continuity(full_planner(3), samples=300, seed=4)
        assert rep.max_endpoint_error <= 1e-9
        assert rep.lipschitz_pairs > 50 and rep.lipschitz_max <= 10

    def test_constant_inputs(self):
        x = pt(0.5, 1.5)
        rep = verify_endpoints_continuity(full_planner(2), pairs=[(x, x)])
        assert rep.max_endpoint_error == 0.0

    def test_jobs_do_not_change_reports(self):
        planner = SafePlanner(FIG8)
        a = verify_containment(planner, samples=200, seed=5, jobs=1).to_json()
        b = verify_containment(planner, samples=200, seed=5, jobs=2).to_json()
        assert a == b


def test_even_figure_eight_pair_below_the_claimed_floor():
    # both points lie in the figure-eight, yet alpha = (1, 0) gives j = 1 < 2n - 2d = 2
    x = np.array([-E3, E3])
    y = np.array([E3, -E3])
    lit = LiteralPlanner(FIG8, "even")
    dom = lit.classify(x, y)
    assert dom.index == (1, 0) and dom.stratum == 1
    assert lit.stratum_floor() == 2
    res = lit.plan(x, y)
    assert np.array_equal(res.path(1.0)[0], y)
