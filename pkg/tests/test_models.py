"""Model specifications, characteristic functions, strips and cumulants."""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.exceptions import BranchError, DomainError, StripViolation
from src.mc import batch_generator, sample_terminal
from src.models import (
    ModelFamily,
    ModelSpec,
    chf,
    get_dynamics,
    log_phi,
    marginal_cumulants,
    martingale_correction,
    phi,
    strip_contains_X,
)


def nig_model(beta, alpha=15.0, delta=0.2, drift="martingale", **extra):
    return ModelSpec(
        family=ModelFamily.NIG, spot=(100.0,) * len(beta), maturity=1.0,
        alpha=alpha, beta=tuple(beta), delta=delta, nig_drift=drift, **extra,
    )


@pytest.fixture(params=["gbm", "vg", "nig"])
def any_model(request, gbm_2d, vg_2d, nig_2d):
    return {"gbm": gbm_2d, "vg": vg_2d, "nig": nig_2d}[request.param]


class TestModelSpec:

    def test_dimension_filled_from_spot(self, gbm_2d):
        assert gbm_2d.d == 2
        np.testing.assert_allclose(gbm_2d.x0, np.log([100.0, 100.0]))

    def test_rejects_nonpositive_sigma(self):
        with pytest.raises(ValidationError):
            ModelSpec(family="GBM", spot=(100.0,), maturity=1.0, sigma=(-0.1,))

    def test_rejects_non_unit_diagonal_correlation(self):
        with pytest.raises(ValidationError):
            ModelSpec(family="GBM", spot=(100.0, 100.0), maturity=1.0, sigma=(0.2, 0.2),
                      correlation=((2.0, 0.0), (0.0, 1.0)))

    def test_rejects_nig_outside_parameter_set(self):
        with pytest.raises(ValidationError):
            nig_model((-12.0, -12.0), alpha=15.0)

    def test_rejects_delta_matrix_without_unit_determinant(self):
        with pytest.raises(ValidationError):
            nig_model((0.0, 0.0), delta_matrix=((2.0, 0.0), (0.0, 2.0)))

    def test_json_round_trip(self, vg_2d):
        assert ModelSpec.from_json(vg_2d.to_json()) == vg_2d

    def test_frozen(self, gbm_2d):
        with pytest.raises(ValidationError):
            gbm_2d.rate = 0.05


class TestMartingaleCorrection:

    def test_vg_closed_form(self):
        model = ModelSpec(family="VG", spot=(100.0,), maturity=1.0, sigma=(0.4,), theta=(-0.3,), nu=0.257)
        expected = math.log(1 - 0.5 * 0.16 * 0.257 + 0.3 * 0.257) / 0.257
        assert martingale_correction(model)[0] == pytest.approx(expected, rel=1e-14)

    def test_vg_vanishes_without_skew_and_volatility(self):
        model = ModelSpec(family="VG", spot=(100.0,), maturity=1.0, sigma=(1e-9,), theta=(0.0,), nu=0.5)
        assert martingale_correction(model)[0] == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("drift", ["martingale", "marginal"])
    def test_nig_symmetric_beta_gives_zero(self, drift):
        assert martingale_correction(nig_model((-0.5,), drift=drift))[0] == pytest.approx(0.0, abs=1e-14)

    def test_gbm_is_minus_half_variance(self, gbm_2d):
        np.testing.assert_allclose(martingale_correction(gbm_2d), [-0.08, -0.08])

    def test_vg_domain_error(self):
        model = ModelSpec(family="VG", spot=(100.0,), maturity=1.0, sigma=(0.4,), theta=(4.0,), nu=0.257)
        with pytest.raises(DomainError):
            martingale_correction(model)

    def test_nig_conventions_agree_in_one_dimension(self):
        marginal = martingale_correction(nig_model((-3.0,), drift="marginal"))
        joint = martingale_correction(nig_model((-3.0,), drift="martingale"))
        np.testing.assert_allclose(marginal, joint, rtol=1e-14)


class TestCharacteristicFunction:

    def test_unit_at_origin(self, any_model):
        assert chf(any_model, np.zeros(2)) == pytest.approx(1.0 + 0.0j, abs=1e-14)

    @pytest.mark.parametrize("j", [0, 1])
    def test_martingale_identity(self, any_model, j):
        z = np.zeros(2, dtype=complex)
        z[j] = -1j
        expected = any_model.spot[j] * math.exp(any_model.rate * any_model.maturity)
        assert chf(any_model, z) == pytest.approx(expected, rel=1e-12)

    def test_martingale_identity_with_rate(self):
        model = ModelSpec(family="VG", spot=(90.0, 110.0), rate=0.05, maturity=2.0,
                          sigma=(0.3, 0.2), theta=(-0.1, 0.1), nu=0.3)
        assert chf(model, [0.0, -1j]) == pytest.approx(110.0 * math.exp(0.1), rel=1e-12)

    def test_conjugate_symmetry(self, any_model):
        u = np.array([[0.7, -1.3], [2.0, 0.5]])
        np.testing.assert_allclose(chf(any_model, -u), np.conj(chf(any_model, u)), rtol=1e-13)

    def test_vectorized_matches_pointwise(self, any_model):
        z = np.array([[0.3 + 0.1j, -0.2 + 0.2j], [1.0 + 0.3j, 0.5 + 0.1j]])
        stacked = phi(any_model, z)
        for k in range(2):
            assert stacked[k] == pytest.approx(phi(any_model, z[k]), rel=1e-14)

    def test_ridge_property(self, any_model):
        R = np.array([0.5, 0.3])
        peak = abs(chf(any_model, 1j * R))
        for u in ([1.0, 0.0], [0.0, -2.0], [3.0, 3.0]):
            assert abs(chf(any_model, np.array(u) + 1j * R)) <= peak * (1 + 1e-12)

    def test_outside_strip_raises(self, nig_2d):
        with pytest.raises(StripViolation):
            log_phi(nig_2d, 1j * np.array([-3.0 + 16.0, -3.0]))

    def test_vg_branch_guard_off_the_real_axis(self, vg_2d):
        z = np.array([0.1, 0.0]) + 1j * np.array([5.0, 5.0])
        with pytest.raises(BranchError):
            get_dynamics(vg_2d).log_phi(z)

    def test_gbm_matches_simulation(self):
        model = ModelSpec(family="GBM", spot=(100.0,), maturity=1.0, sigma=(0.4,))
        M = 200_000
        samples = sample_terminal(model, batch_generator(7, 0), M)[:, 0]
        empirical = np.mean(np.exp(0.7j * samples))
        exact = chf(model, [0.7])
        assert abs(empirical.real - exact.real) < 4 / math.sqrt(M)
        assert abs(empirical.imag - exact.imag) < 4 / math.sqrt(M)


class TestStrips:

    def test_gbm_everywhere(self, gbm_2d):
        assert strip_contains_X(gbm_2d, [50.0, -80.0]).contained

    def test_nig_center(self):
        check = strip_contains_X(nig_model((-3.0, -3.0)), [-3.0, -3.0])
        assert check.contained
        assert check.margin == pytest.approx(225.0)

    def test_nig_boundary_excluded(self):
        check = strip_contains_X(nig_model((-3.0, -3.0)), [12.0, -3.0])
        assert not check.contained
        assert check.margin == pytest.approx(0.0, abs=1e-12)

    def test_vg_margin(self, vg_2d):
        R = np.array([1.7, 1.7])
        expected = 1 + 0.257 * (-0.3 * 3.4) - 0.5 * 0.257 * 0.16 * (2 * 1.7 ** 2)
        assert strip_contains_X(vg_2d, R).margin == pytest.approx(expected)

    def test_vg_center_is_interior(self, vg_2d):
        center = get_dynamics(vg_2d).strip_center()
        assert strip_contains_X(vg_2d, center).contained


class TestCumulants:

    def test_gbm_closed_form(self):
        model = ModelSpec(family="GBM", spot=(100.0,), maturity=1.0, sigma=(0.4,))
        c1, c2, c4 = marginal_cumulants(model, 0)
        assert c1 == pytest.approx(math.log(100.0) - 0.08)
        assert c2 == pytest.approx(0.16)
        assert abs(c4) <= 1e-6

    def test_vg_variance_matches_closed_form(self):
        sigma, theta, nu = 0.4, -0.3, 0.257
        model = ModelSpec(family="VG", spot=(100.0,), maturity=1.0, sigma=(sigma,), theta=(theta,), nu=nu)
        _, c2, _ = marginal_cumulants(model, 0)
        assert c2 == pytest.approx(sigma ** 2 + nu * theta ** 2, rel=1e-6)

    def test_vg_variance_matches_simulation(self):
        model = ModelSpec(family="VG", spot=(100.0,), maturity=1.0, sigma=(0.4,), theta=(-0.3,), nu=0.257)
        _, c2, c4 = marginal_cumulants(model, 0)
        M = 400_000
        samples = sample_terminal(model, batch_generator(11, 0), M)[:, 0]
        standard_error = math.sqrt((c4 + 2 * c2 ** 2) / M)
        assert abs(np.var(samples) - c2) < 4 * standard_error

    def test_nig_mean_from_chf(self):
        model = nig_model((-3.0,), drift="martingale")
        dynamics = get_dynamics(model)
        c1, _, _ = marginal_cumulants(model, 0)
        expected = math.log(100.0) + dynamics.martingale_correction()[0] + 0.2 * -3.0 / dynamics.gamma
        assert c1 == pytest.approx(expected, rel=1e-8)

    def test_index_out_of_range(self, gbm_2d):
        with pytest.raises(IndexError):
            marginal_cumulants(gbm_2d, 2)
