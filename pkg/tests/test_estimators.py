import math
import os

import numpy as np
import pytest

import symentropy as se

HALF_LOG_2PIE = 0.5 * math.log(2.0 * math.pi * math.e)


def gaussian_entropy(n, var):
    return n * (HALF_LOG_2PIE + 0.5 * math.log(var))


FIVE_1D_MIXTURES = [
    se.gaussian_iid(1),
    se.gaussian_iid(1, 0.25),
    se.bimodal_1d(),
    se.trimodal_1d(),
    se.make_gaussian_mixture([(0.4, [-1.0], [[0.5]]), (0.6, [1.0], [[2.0]])]),
]


class TestEntropyMc:
    def test_standard_normal(self):
        est = se.entropy_mc(se.gaussian_iid(1), 200000, 7)
        assert est.method == "mc_logdensity"
        assert abs(est.value - HALF_LOG_2PIE) <= 3 * est.stderr
        assert est.stderr < 0.005

    def test_additivity_n3(self):
        est = se.entropy_mc(se.gaussian_iid(3), 200000, 7)
        assert abs(est.value - 3 * HALF_LOG_2PIE) <= 3 * est.stderr

    def test_agrees_with_quadrature_on_bimodal(self):
        law = se.bimodal_1d()
        mc = se.entropy_mc(law, 200000, 11)
        quad = se.entropy_quadrature_1d(law)
        assert abs(mc.value - quad.value) <= 3 * math.hypot(mc.stderr, quad.stderr)

    def test_count_floor(self):
        with pytest.raises(ValueError, match="count"):
            se.entropy_mc(se.gaussian_iid(1), 50, 0)

    def test_deterministic_and_thread_independent(self):
        law = se.bimodal_1d()
        a = se.entropy_mc(law, 150000, 3)
        assert a == se.entropy_mc(law, 150000, 3)
        os.environ["SYMENTROPY_THREADS"] = "4"
        try:
            b = se.entropy_mc(law, 150000, 3)
        finally:
            del os.environ["SYMENTROPY_THREADS"]
        assert a == b


class TestEntropyQuadrature:
    def test_standard_normal_accuracy(self):
        est = se.entropy_quadrature_1d(se.gaussian_iid(1))
        assert est.value == pytest.approx(HALF_LOG_2PIE, abs=1e-9)
        assert est.method == "quadrature_1d"

    def test_narrow_gaussian_closed_form(self):
        est = se.entropy_quadrature_1d(se.gaussian_iid(1, 0.1))
        assert est.value == pytest.approx(HALF_LOG_2PIE + 0.5 * math.log(0.1), abs=1e-9)

    def test_explicit_radius_honored(self):
        est = se.entropy_quadrature_1d(se.gaussian_iid(1), se.QuadratureSpec(radius=12.0))
        assert est.value == pytest.approx(HALF_LOG_2PIE, abs=1e-9)

    def test_truncation_guard(self):
        with pytest.raises(se.TruncationInsufficientError):
            se.entropy_quadrature_1d(se.bimodal_1d(), se.QuadratureSpec(radius=3.0))

    def test_rejects_multivariate(self):
        with pytest.raises(ValueError, match="1-D"):
            se.entropy_quadrature_1d(se.gaussian_iid(2))

    def test_non_mixture_needs_radius(self):
        base = se.gaussian_iid(1)
        model = se.DensityModel(1, base.log_density, base.score, base.sample)
        with pytest.raises(ValueError, match="radius"):
            se.entropy_quadrature_1d(model)
        est = se.entropy_quadrature_1d(model, se.QuadratureSpec(radius=10.0))
        assert est.value == pytest.approx(HALF_LOG_2PIE, abs=1e-9)


class TestEntropyKnn:
    def test_standard_normal_1d(self):
        x = se.gaussian_iid(1).sample(100000, 3)
        est = se.entropy_knn(x)
        assert est.method == "knn"
        assert abs(est.value - HALF_LOG_2PIE) <= 0.02

    def test_standard_normal_2d(self):
        x = se.gaussian_iid(2).sample(100000, 3)
        est = se.entropy_knn(x)
        assert abs(est.value - 2 * HALF_LOG_2PIE) <= 0.03

    def test_scaling_shift(self):
        x = se.gaussian_iid(1).sample(50000, 9)
        base = se.entropy_knn(x)
        scaled = se.entropy_knn(2.0 * x)
        assert scaled.value - base.value == pytest.approx(math.log(2.0), abs=1e-9)

    def test_duplicates_jittered(self):
        x = se.gaussian_iid(1).sample(2000, 5)
        doubled = np.vstack([x, x])
        est = se.entropy_knn(doubled)
        assert np.isfinite(est.value)

    def test_too_few_samples(self):
        with pytest.raises(se.TooFewSamplesError):
            se.entropy_knn(np.zeros((8, 1)), k=4)

    def test_calibrated_within_3_stderr(self):
        x = se.gaussian_iid(3).sample(60000, 21)
        est = se.entropy_knn(x)
        assert abs(est.value - 3 * HALF_LOG_2PIE) <= 3 * est.stderr


class TestProjectionEntropy:
    def test_rotation_invariance(self):
        est = se.projection_entropy(se.gaussian_iid(3), np.ones(3) / math.sqrt(3))
        assert est.value == pytest.approx(HALF_LOG_2PIE, abs=1e-9)

    def test_rotated_bimodal_diagonal_recovers_base(self):
        law = se.rotated_bimodal()
        base = se.entropy_quadrature_1d(se.bimodal_1d())
        est = se.projection_entropy(law, np.array([1.0, 1.0]) / math.sqrt(2))
        assert est.value == pytest.approx(base.value, abs=1e-9)

    def test_correlated_gaussian_small_variance_direction(self):
        est = se.projection_entropy(
            se.correlated_gaussian(-0.9), np.array([1.0, 1.0]) / math.sqrt(2)
        )
        assert est.value == pytest.approx(HALF_LOG_2PIE + 0.5 * math.log(0.1), abs=1e-9)

    def test_rejects_non_unit_vector(self):
        with pytest.raises(se.NotUnitVectorError):
            se.projection_entropy(se.gaussian_iid(2), np.array([1.0, 1.0]))


class TestFisherMc:
    def test_isotropic_gaussian(self):
        est = se.fisher_mc(se.gaussian_iid(3), 200000, 1)
        assert abs(est.value - 3.0) <= 3 * est.stderr
        assert est.value >= 0.0

    def test_variance_four(self):
        est = se.fisher_mc(se.gaussian_iid(1, 4.0), 200000, 1)
        assert abs(est.value - 0.25) <= 3 * est.stderr

    def test_bimodal_matches_quadrature_oracle(self):
        law = se.bimodal_1d()
        est = se.fisher_mc(law, 200000, 2)
        # independent oracle: high-resolution quadrature of (f')^2 / f
        x = np.linspace(-12, 12, 200001)
        f = np.exp(law.log_density(x[:, None]))
        fp = np.gradient(f, x)
        oracle = np.trapezoid(fp**2 / np.maximum(f, 1e-300), x)
        assert abs(est.value - oracle) <= 3 * est.stderr

    def test_heat_flow_closed_form(self):
        for var, t in [(1.0, 1.0), (4.0, 2.0), (0.25, 0.5)]:
            law = se.convolve_isotropic(se.gaussian_iid(2, var), t)
            est = se.fisher_mc(law, 100000, 4)
            assert abs(est.value - 2.0 / (var + t)) <= 3 * est.stderr


class TestCrossTerm:
    def test_symmetric_product_vanishes(self):
        est = se.cross_term_mc(se.bimodal_product(3), 0, 1, 100000, 5)
        assert abs(est.value) <= 3 * est.stderr

    def test_correlated_gaussian_matches_precision_entry(self):
        est = se.cross_term_mc(se.correlated_gaussian(-0.9), 0, 1, 200000, 5)
        assert abs(est.value - 0.9 / 0.19) <= 3 * est.stderr

    def test_standard_normal_vanishes(self):
        est = se.cross_term_mc(se.gaussian_iid(3), 1, 2, 100000, 6)
        assert abs(est.value) <= 3 * est.stderr

    def test_index_validation(self):
        with pytest.raises(se.IndexOutOfRangeError):
            se.cross_term_mc(se.gaussian_iid(2), 0, 0, 1000, 0)
        with pytest.raises(se.IndexOutOfRangeError):
            se.cross_term_mc(se.gaussian_iid(2), 0, 2, 1000, 0)


class TestScoreProjection:
    def test_single_gaussian_analytic(self):
        law = se.make_gaussian_mixture([(1.0, [0.0, 0.0], [[2.0, 0.4], [0.4, 1.0]])])
        a = np.array([[3.0, 1.0]]) / math.sqrt(10)
        report = se.score_projection_residual(law, a, probes=12, count=1000, seed=0)
        assert report.max_residual <= 1e-10

    def test_bimodal_product_diagonal_direction(self):
        law = se.bimodal_product(2)
        a = np.array([[1.0, 1.0]]) / math.sqrt(2)
        report = se.score_projection_residual(law, a, probes=8, count=30000, seed=0)
        assert report.max_residual <= 3 * report.stderr

    def test_identity_projection_exact(self):
        law = se.bimodal_product(2)
        report = se.score_projection_residual(law, np.eye(2), probes=8, count=1000, seed=0)
        assert report.max_residual <= 1e-12

    def test_rejects_rank_deficient(self):
        with pytest.raises(se.RankDeficientError):
            se.score_projection_residual(
                se.gaussian_iid(2), np.array([[1.0, 0.0], [1.0, 1e-13]]), probes=2, count=500, seed=0
            )


class TestMixedPartial:
    def test_product_law_passes(self):
        report = se.mixed_partial_independence(se.bimodal_product(2), 0)
        assert report.verdict
        assert report.max_abs <= report.tol_effective

    def test_correlated_gaussian_fails_with_known_value(self):
        report = se.mixed_partial_independence(se.correlated_gaussian(-0.9), 0)
        assert not report.verdict
        assert report.max_abs == pytest.approx(0.9 / 0.19, rel=1e-3)

    def test_rotated_bimodal_in_unrotated_coordinates(self):
        from symentropy.mixtures import ROTATION_2D

        law = se.push_forward_linear(se.rotated_bimodal(), ROTATION_2D.T)
        report = se.mixed_partial_independence(law, 0)
        assert report.verdict

    def test_index_validation(self):
        with pytest.raises(se.IndexOutOfRangeError):
            se.mixed_partial_independence(se.gaussian_iid(2), 5)


class TestCrossMethodAgreement:
    @pytest.mark.parametrize("idx", range(len(FIVE_1D_MIXTURES)))
    def test_three_routes_agree(self, idx):
        law = FIVE_1D_MIXTURES[idx]
        mc = se.entropy_mc(law, 100000, 13)
        quad = se.entropy_quadrature_1d(law)
        knn = se.entropy_knn(law.sample(60000, 13))
        assert abs(mc.value - quad.value) <= 3 * math.hypot(mc.stderr, quad.stderr)
        assert abs(knn.value - quad.value) <= 3 * math.hypot(knn.stderr, quad.stderr)
        assert abs(knn.value - mc.value) <= 3 * math.hypot(knn.stderr, mc.stderr)


class TestOrthonormalInvariance:
    def test_entropy_invariant_under_rotation(self):
        law = se.bimodal_product(2)
        q = np.linalg.qr(np.random.default_rng(12).standard_normal((2, 2)))[0]
        rotated = se.push_forward_linear(law, q)
        a = se.entropy_mc(law, 100000, 3)
        b = se.entropy_mc(rotated, 100000, 4)
        assert abs(a.value - b.value) <= 3 * math.hypot(a.stderr, b.stderr)


class TestGaussianCalibrationGrid:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_mc_and_fisher_on_grid(self, n):
        for var in (0.25, 1.0, 4.0):
            law = se.gaussian_iid(n, var)
            h = se.entropy_mc(law, 50000, 31)
            assert abs(h.value - gaussian_entropy(n, var)) <= 3 * h.stderr
            fi = se.fisher_mc(law, 50000, 31)
            assert abs(fi.value - n / var) <= 3 * fi.stderr
