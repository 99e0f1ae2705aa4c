import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from harmbohr import series as S
from harmbohr.extremal import (CoefficientSeq, QuadratureError, TruncationError, area_quadrature,
                               eval_coefficients, eval_extremal, extremal_coefficients, growth_bounds,
                               lhs_bruteforce, required_order, sample_class_coefficients,
                               sharpness_certificate)
from harmbohr.functionals import ParamSet, phi_main, phi_star
from harmbohr.radius import radius_for
from harmbohr.specfun import DomainError


class TestCoefficients:
    def test_a2(self):
        assert extremal_coefficients(0.5, 2).a[1] == 0.5

    def test_normalization(self):
        c = extremal_coefficients(1.1, 5)
        assert c.a[0] == 1.0 and c.b[0] == 0.0
        assert np.all(c.b == 0.0)

    def test_a10(self):
        assert extremal_coefficients(1.26, 10).a[9] == pytest.approx(0.028, abs=1e-16)

    def test_rejects_oversized(self):
        a = extremal_coefficients(0.5, 4).a.copy()
        a[2] *= 1.01
        with pytest.raises(DomainError):
            CoefficientSeq(a, np.zeros(4), 0.5)

    def test_rejects_bad_normalization(self):
        with pytest.raises(DomainError):
            CoefficientSeq(np.array([0.9, 0.1]), np.zeros(2), 0.5)
        with pytest.raises(DomainError):
            CoefficientSeq(np.array([1.0, 0.1]), np.array([0.1, 0.0]), 0.5)

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            CoefficientSeq(np.array([1.0, -0.1]), np.zeros(2), 0.5)


class TestEval:
    def test_small_r(self):
        assert eval_extremal(1e-12, 0.8) == pytest.approx(1e-12, rel=1e-9)

    def test_identity(self):
        assert eval_extremal(0.5, 0.0) == 0.5

    def test_matches_growth(self):
        assert eval_extremal(0.5, 0.14) == pytest.approx(0.542959, abs=1e-6)

    @pytest.mark.parametrize("r", [0.1, 0.5, 0.8])
    def test_series_agrees(self, r):
        M = 0.9
        c = extremal_coefficients(M, required_order(r, M))
        v, rem = eval_coefficients(c, r)
        assert abs(v - eval_extremal(r, M)) <= rem + 1e-15

    def test_derivative(self):
        # f_M'(r) = 1 - 2M log(1 - r)
        M, r, h = 0.6, 0.4, 1e-6
        fd = (eval_extremal(r + h, M) - eval_extremal(r - h, M)) / (2 * h)
        assert fd == pytest.approx(1 - 2 * M * math.log(1 - r), abs=1e-8)

    def test_growth_bounds(self):
        lo, hi = growth_bounds(0.5, 0.7)
        assert 0 < lo < 0.5 < hi
        assert hi == eval_extremal(0.5, 0.7)


class TestBruteforce:
    @pytest.mark.parametrize("N", range(1, 9))
    @pytest.mark.parametrize("r", [0.2, 0.4, 0.7])
    def test_extremal_matches_closed_form(self, N, r):
        M = 0.8
        p = ParamSet(beta=0.5, mu=1.5, lam=0.7, m=2, N=N, poly=(1.0, 2.0), M=M)
        c = extremal_coefficients(M, required_order(r, M))
        for fid, fn in (("main", phi_main), ("main-star", phi_star)):
            val, rem = lhs_bruteforce(fid, p, r, c)
            assert rem <= 1e-10
            assert val == pytest.approx(fn(r, p) + S.boundary_distance(M), abs=1e-10)

    def test_degenerate_zero(self):
        p = ParamSet(N=2, M=0.5)
        c = CoefficientSeq(np.r_[1.0, np.zeros(99)], np.zeros(100), 0.5)
        val, _ = lhs_bruteforce("main", p, 0.3, c)
        assert val == pytest.approx(0.0, abs=1e-12)

    def test_equals_distance_at_root(self):
        p = ParamSet(M=0.14)
        R = radius_for("cor3.8", p).value
        c = extremal_coefficients(0.14, required_order(R, 0.14))
        val, _ = lhs_bruteforce("cor3.8", p, R, c)
        assert val == pytest.approx(S.boundary_distance(0.14), abs=1e-8)

    def test_truncation_error(self):
        p = ParamSet(beta=1, M=1.0)
        c = extremal_coefficients(1.0, 4)
        with pytest.raises(TruncationError):
            lhs_bruteforce("main", p, 0.9, c)

    def test_M_mismatch(self):
        with pytest.raises(DomainError):
            lhs_bruteforce("main", ParamSet(M=0.3), 0.3, extremal_coefficients(0.4, 50))

    def test_analytic_rejected(self):
        with pytest.raises(DomainError):
            lhs_bruteforce("ana-rpn", ParamSet(M=0.3), 0.3, extremal_coefficients(0.3, 50))


class TestSharpness:
    def test_table1_row1(self):
        p = ParamSet(M=0.14)
        cert = sharpness_certificate("cor3.8", p, radius_for("cor3.8", p), 1e-4)
        assert cert.holds
        assert cert.below <= cert.distance < cert.above

    def test_table7(self):
        p = ParamSet(M=0.14)
        assert sharpness_certificate("cor3.13", p, radius_for("cor3.13", p)).holds

    def test_wrong_radius_fails(self):
        p = ParamSet(M=0.14)
        R = radius_for("cor3.8", p).value
        assert not sharpness_certificate("cor3.8", p, R - 0.01).holds

    @pytest.mark.parametrize("delta", [0.0, -1e-4, 0.1])
    def test_bad_delta(self, delta):
        with pytest.raises(DomainError):
            sharpness_certificate("cor3.8", ParamSet(M=0.14), 0.3, delta)

    def test_leaves_interval(self):
        with pytest.raises(DomainError):
            sharpness_certificate("cor3.8", ParamSet(M=0.14), 0.99995, 1e-4)


class TestSampler:
    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2 ** 32), st.floats(0, 1.29), st.integers(2, 300))
    def test_invariants(self, seed, M, n):
        c = sample_class_coefficients(M, seed, n)
        n_idx = np.arange(2, n + 1)
        assert c.a[0] == 1.0 and c.b[0] == 0.0
        assert np.all(c.a >= 0) and np.all(c.b >= 0)
        assert np.all(c.c[1:] <= 2 * M / (n_idx * (n_idx - 1)) * (1 + 1e-12))

    def test_saturated_is_extremal(self):
        c = sample_class_coefficients(0.9, 0, 40, u=1.0, split=1.0)
        e = extremal_coefficients(0.9, 40)
        np.testing.assert_allclose(c.a, e.a, rtol=1e-15)
        assert np.all(c.b == 0.0)

    def test_zero_is_identity(self):
        c = sample_class_coefficients(0.9, 0, 40, u=0.0)
        assert np.all(c.c[1:] == 0.0)

    def test_seeded(self):
        a = sample_class_coefficients(0.5, 42, 30)
        b = sample_class_coefficients(0.5, 42, 30)
        np.testing.assert_array_equal(a.a, b.a)
        np.testing.assert_array_equal(a.b, b.b)

    def test_members_respect_inequality_below_radius(self):
        p = ParamSet(M=0.7)
        r = 0.9 * radius_for("cor3.9", p).value
        K = required_order(r, 0.7)
        d = S.boundary_distance(0.7)
        for seed in range(50):
            val, _ = lhs_bruteforce("cor3.9", p, r, sample_class_coefficients(0.7, seed, K))
            assert val <= d


class TestQuadrature:
    @pytest.mark.parametrize("r", [0.1, 0.5, 0.9])
    def test_identity(self, r):
        assert area_quadrature(0.0, r) == pytest.approx(r * r, abs=1e-12)

    def test_against_closed_form(self):
        assert area_quadrature(0.5, 0.5) == pytest.approx(S.area_majorant(0.5, 0.5), abs=1e-10)
        assert area_quadrature(0.5, 0.5) == pytest.approx(0.2826747, abs=1e-7)

    def test_small_radius(self):
        assert area_quadrature(0.5, 1e-4) == pytest.approx(1e-8, rel=1e-3)

    @pytest.mark.parametrize("M", [0.14, 1.26])
    def test_matches_squared_not_linear(self, M):
        q = area_quadrature(M, 0.7)
        assert q == pytest.approx(S.area_majorant(0.7, M, "squared"), abs=1e-9)
        assert abs(q - S.area_majorant(0.7, M, "linear")) > 1e-3

    def test_budget(self):
        with pytest.raises(DomainError):
            area_quadrature(0.5, 0.97)

    def test_non_convergence_reports_estimate(self):
        with pytest.raises(QuadratureError) as info:
            area_quadrature(1.2, 0.9, tol=1e-30, max_level=1)
        assert info.value.estimate > 0
