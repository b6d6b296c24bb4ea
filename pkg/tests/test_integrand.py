"""The damped Fourier integrand."""
import json
import math

import numpy as np
import pytest
from scipy import integrate

from src.exceptions import StripViolation
from src.models import ModelSpec, strip_contains_X
from src.payoffs import PayoffSpec, strip_contains_P
from src.pricing import DampingVector, FourierIntegrand, g, log_peak, optimal_damping, pricing_model
from src.quadrature import HierarchicalQuadrature, RuleKind, full_line_rule
from src.repositories.example_repository import black_scholes_put, entry


def gbm_1d(sigma=0.4) -> ModelSpec:
    return ModelSpec(family="GBM", spot=(100.0,), maturity=1.0, sigma=(sigma,))


def integrate_1d(integrand: FourierIntegrand) -> float:
    value, _ = integrate.quad(lambda u: float(integrand(np.array([u]))), -np.inf, np.inf,
                              epsabs=0.0, epsrel=1e-11, limit=500)
    return value


class TestDampingVector:

    def test_records_margins(self, vg_2d, put_2d):
        damping = DampingVector.create([1.7, 1.7], vg_2d, put_2d)
        assert damping.model_margin > 0
        assert damping.payoff_margins == (1.7, 1.7)

    def test_rejects_model_strip(self, nig_2d, put_2d):
        with pytest.raises(StripViolation):
            DampingVector.create([14.0, 1.0], nig_2d, put_2d)

    def test_rejects_payoff_strip(self, gbm_2d, call_on_min_2d):
        with pytest.raises(StripViolation):
            DampingVector.create([-0.4, -0.4], gbm_2d, call_on_min_2d)

    def test_shifted(self, gbm_2d, put_2d):
        damping = DampingVector.create([2.5, 2.5], gbm_2d, put_2d).shifted([1.0, 1.0], gbm_2d, put_2d)
        assert damping.R == (3.5, 3.5)

    def test_json_round_trip(self, gbm_2d, put_2d):
        damping = DampingVector.create([2.5, 1.5], gbm_2d, put_2d, iterations=7)
        payload = json.loads(damping.to_json())
        assert payload["R"] == [2.5, 1.5]
        assert payload["iterations"] == 7
        assert DampingVector.from_json(damping.to_json()) == damping


class TestIntegrand:

    def test_even_in_u(self, vg_2d, put_2d):
        f = FourierIntegrand(vg_2d, put_2d, [1.7, 1.7])
        u = np.array([[0.3, -1.2], [2.0, 0.7], [-4.0, 3.5]])
        np.testing.assert_allclose(f(u), f(-u), rtol=1e-12)

    def test_peak_bounds_the_integrand(self, nig_2d, call_on_min_2d):
        f = FourierIntegrand(nig_2d, call_on_min_2d, [-9.9, -9.9])
        u = np.random.default_rng(3).normal(scale=5.0, size=(200, 2))
        assert np.all(np.abs(f(u)) <= f.peak() * (1 + 1e-10))
        assert f(np.zeros(2)) == pytest.approx(f.peak(), rel=1e-12)

    def test_peak_is_exp_log_peak(self, gbm_2d, put_2d):
        f = FourierIntegrand(gbm_2d, put_2d, [2.5, 2.5])
        assert np.log(f.peak()) == pytest.approx(log_peak(gbm_2d, put_2d, [2.5, 2.5]))

    def test_counts_evaluations(self, gbm_2d, put_2d):
        f = FourierIntegrand(gbm_2d, put_2d, [2.5, 2.5])
        f(np.zeros((7, 2)))
        f(np.zeros(2))
        assert f.n_evaluations == 8

    def test_functional_form(self, gbm_2d, put_2d):
        u = np.array([[0.5, -0.5]])
        np.testing.assert_allclose(
            g(u, [2.5, 2.5], gbm_2d, put_2d),
            FourierIntegrand(gbm_2d, put_2d, [2.5, 2.5])(u),
        )

    @pytest.mark.parametrize("R", [0.5, 1.5, 3.0])
    def test_black_scholes_put(self, R):
        price = integrate_1d(FourierIntegrand(gbm_1d(), PayoffSpec(family="BasketPut", strike=100.0, d=1), [R]))
        assert price == pytest.approx(black_scholes_put(100.0, 100.0, 0.4, 1.0), rel=1e-7)
        assert price == pytest.approx(15.8519, abs=1e-4)

    def test_with_rate(self):
        model = ModelSpec(family="GBM", spot=(100.0,), rate=0.05, maturity=0.5, sigma=(0.25,))
        price = integrate_1d(FourierIntegrand(model, PayoffSpec(family="BasketPut", strike=95.0, d=1), [2.0]))
        assert price == pytest.approx(black_scholes_put(100.0, 95.0, 0.25, 0.5, 0.05), rel=1e-7)

    def test_weighted_basket_shift(self):
        # max(50 - S/2, 0) is half the at-the-money put
        half = PayoffSpec(family="BasketPut", strike=50.0, weights=(0.5,))
        assert pricing_model(gbm_1d(), half).spot[0] == pytest.approx(50.0)
        price = integrate_1d(FourierIntegrand(gbm_1d(), half, [1.5]))
        assert price == pytest.approx(0.5 * black_scholes_put(100.0, 100.0, 0.4, 1.0), rel=1e-7)

    def test_example_one_by_tensor_quadrature(self):
        example = entry(1)
        f = FourierIntegrand(example.model, example.payoff, example.damping)
        result = HierarchicalQuadrature(f, 2, RuleKind.LAGUERRE, "tp").tp_estimate(31)
        tolerance = max(3 * example.stat_error, 5e-3 * example.reference)
        assert result.estimate == pytest.approx(example.reference, abs=tolerance)


class TestStrikeScan:

    def test_matches_separate_integrands(self):
        model = gbm_1d()
        base = PayoffSpec(family="BasketPut", strike=100.0, d=1)
        rule = full_line_rule(RuleKind.LAGUERRE, 48)
        nodes, weights = rule.nodes[:, None], rule.weights
        strikes = [80.0, 100.0, 120.0]
        scanned = FourierIntegrand(model, base, [1.5]).strike_scan(strikes, nodes, weights)
        for strike, price in zip(strikes, scanned):
            single = FourierIntegrand(model, PayoffSpec(family="BasketPut", strike=strike, d=1), [1.5])
            assert price == pytest.approx(float(single(nodes) @ weights), rel=1e-10)

    def test_prices_black_scholes(self):
        model = gbm_1d()
        rule = full_line_rule(RuleKind.LAGUERRE, 64)
        scanned = FourierIntegrand(model, PayoffSpec(family="BasketPut", strike=100.0, d=1), [1.5]).strike_scan(
            [90.0, 110.0], rule.nodes[:, None], rule.weights
        )
        expected = [black_scholes_put(100.0, k, 0.4, 1.0) for k in (90.0, 110.0)]
        np.testing.assert_allclose(scanned, expected, rtol=1e-4)


class TestOneDimensionalPut:

    @pytest.fixture
    def integrand(self) -> FourierIntegrand:
        model, put = gbm_1d(), PayoffSpec(family="BasketPut", strike=100.0, d=1)
        return FourierIntegrand(model, put, optimal_damping(model, put))

    def test_black_scholes_by_laguerre_quadrature(self, integrand):
        price = HierarchicalQuadrature(integrand, 1, RuleKind.LAGUERRE, "tp").tp_estimate(255).estimate
        assert price == pytest.approx(black_scholes_put(100.0, 100.0, 0.4, 1.0), rel=1e-8)

    def test_laguerre_needs_fewer_evaluations_than_hermite(self, integrand):
        expected = black_scholes_put(100.0, 100.0, 0.4, 1.0)

        def within(kind, n):
            rule = full_line_rule(kind, n)
            price = float(integrand(rule.nodes[:, None]) @ rule.weights)
            return abs(price - expected) <= 1e-4 * expected

        def work_to_reach(kind):
            # first node count from which three consecutive rules stay accurate
            for n in range(1, 400):
                if all(within(kind, n + k) for k in range(3)):
                    return full_line_rule(kind, n).size
            return math.inf

        laguerre = work_to_reach(RuleKind.LAGUERRE)
        assert laguerre < math.inf
        assert laguerre < work_to_reach(RuleKind.HERMITE)


@pytest.mark.parametrize("model_name", ["gbm_2d", "vg_2d", "nig_2d"])
@pytest.mark.parametrize("payoff_name", ["put_2d", "call_on_min_2d"])
def test_ridge_and_evenness_on_random_tuples(request, model_name, payoff_name):
    model = request.getfixturevalue(model_name)
    payoff = request.getfixturevalue(payoff_name)
    rng = np.random.default_rng(11)
    center = optimal_damping(model, payoff).array
    dampings = []
    for _ in range(10_000):
        R = center + rng.normal(scale=0.3, size=2)
        if strip_contains_X(model, R).contained and strip_contains_P(payoff, R).contained:
            dampings.append(R)
        if len(dampings) == 20:
            break
    assert len(dampings) == 20

    # 20 damping vectors x 10 frequencies per (model, payoff) pair
    for R in dampings:
        f = FourierIntegrand(model, payoff, R)
        peak = f.peak()
        u = rng.normal(scale=4.0, size=(10, 2))
        values = f(u)
        assert np.all(np.abs(values) <= peak * (1 + 1e-12))
        assert np.all(np.abs(f(-u) - values) <= 1e-12 * peak)
