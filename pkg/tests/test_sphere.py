import numpy as np
import pytest

from toriplan import sphere as sph

from oracles import rotate_towards, stereo_field_fd

E2 = sph.basepoint(2)
E3 = sph.basepoint(3)


def circle(theta):
    return sph.angle_point(theta)


def angle_of(p):
    return np.arctan2(p[1], p[0]) % (2 * np.pi)


class TestShortGeodesic:
    def test_quarter_circle_midpoint(self):
        seg = sph.s2_short_geodesic(circle(0), circle(np.pi / 2))
        assert angle_of(seg(0.5)) == pytest.approx(np.pi / 4, abs=1e-14)

    def test_constant_when_equal(self):
        x = circle(1.0)
        seg = sph.s2_short_geodesic(x, x)
        assert isinstance(seg, sph.Constant)
        assert np.array_equal(seg(np.linspace(0, 1, 5)), np.tile(x, (5, 1)))

    def test_antipodal_rejected(self):
        with pytest.raises(sph.AntipodalInput):
            sph.s2_short_geodesic(circle(0.3), -circle(0.3))

    def test_matches_rotation_oracle(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            x, y = sph.random_point(rng, 5), sph.random_point(rng, 5)
            seg = sph.s2_short_geodesic(x, y)
            for s in (0.1, 0.37, 0.9):
                assert np.allclose(seg(s), rotate_towards(x, y, s), atol=1e-12)

    def test_endpoints_exact(self):
        rng = np.random.default_rng(2)
        x, y = sph.random_point(rng, 4), sph.random_point(rng, 4)
        seg = sph.s2_short_geodesic(x, y)
        assert np.array_equal(seg(0.0), x) and np.array_equal(seg(1.0), y)


class TestOddSemicircle:
    def test_circle(self):
        seg = sph.s1_semicircle_odd(circle(0))
        assert angle_of(seg(0.5)) == pytest.approx(np.pi / 2)
        assert angle_of(seg(1.0)) == pytest.approx(np.pi)

    def test_s3(self):
        seg = sph.s1_semicircle_odd(sph.basepoint(4))
        # (i, 0) in C^2
        assert np.allclose(seg(0.5), [0, 1, 0, 0], atol=1e-15)

    def test_start(self):
        x = circle(2.2)
        assert np.array_equal(sph.s1_semicircle_odd(x)(0.0), x)

    def test_parity_checked(self):
        with pytest.raises(sph.SphereError):
            sph.s1_semicircle_odd(E3)


class TestEvenField:
    def test_antipode_of_pole(self):
        assert np.allclose(sph.even_field(-E3), [0, 1, 0])

    def test_unit_tangent(self):
        rng = np.random.default_rng(3)
        for m in (3, 5):
            for _ in range(200):
                x = sph.random_point(rng, m)
                v = sph.even_field(x)
                assert abs(np.linalg.norm(v) - 1) < 1e-12
                assert abs(x @ v) < 1e-10

    def test_matches_stereographic_oracle(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            x = sph.random_point(rng, 3)
            if x[0] > 0.9:
                continue
            assert np.allclose(sph.even_field(x), stereo_field_fd(x), atol=1e-6)

    def test_near_pole(self):
        # x0 must stay below 1 - tau_anti
        for eps in (1e-1, 1e-2, 1e-3, 1e-4):
            x = np.array([np.cos(eps), np.sin(eps) * 0.6, np.sin(eps) * 0.8])
            assert abs(np.linalg.norm(sph.even_field(x)) - 1) < 1e-12

    def test_pole_rejected(self):
        with pytest.raises(sph.PoleInput):
            sph.even_field(E3)


class TestEvenRules:
    def test_meridian(self):
        seg = sph.s0_fixed_even(3)
        assert np.allclose(seg(0.5), [0, 1, 0])
        assert np.array_equal(seg(1.0), -E3)

    def test_semicircle_from_south_pole(self):
        assert np.array_equal(sph.s1_semicircle_even(-E3)(1.0), E3)

    def test_semicircle_on_sphere(self):
        rng = np.random.default_rng(5)
        x = sph.random_point(rng, 3)
        pts = sph.s1_semicircle_even(x)(np.linspace(0, 1, 100))
        assert np.abs(np.linalg.norm(pts, axis=1) - 1).max() < sph.TAU_NORM

    def test_semicircle_pole_rejected(self):
        with pytest.raises(sph.PoleInput):
            sph.s1_semicircle_even(E3)


class TestCorrectedArc:
    def test_nearly_antipodal_endpoint_exact(self):
        x = circle(0.4)
        y = -circle(0.4 + 1e-11)
        seg = sph.corrected(sph.s1_semicircle_odd(x), x, y)
        assert np.array_equal(seg(1.0), y)
        pts = seg(np.linspace(0, 1, 257))
        assert np.abs(np.linalg.norm(pts, axis=1) - 1).max() < 1e-12
        assert np.abs(pts[-2] - y).max() < 0.02

    def test_reverse(self):
        x = circle(0.1)
        seg = sph.corrected(sph.s1_semicircle_odd(x), x, -circle(0.1 + 1e-10))
        s = np.linspace(0, 1, 11)
        assert np.allclose(seg.reversed()(s), seg(1 - s), atol=1e-14)


def test_dimension_helpers():
    assert sph.sphere_parity(2) == "odd" and sph.sphere_parity(3) == "even"
    assert sph.ambient_dim("odd", 2) == 4 and sph.ambient_dim("even", 2) == 5
    with pytest.raises(sph.SphereError):
        sph.ambient_dim("odd", 0)
