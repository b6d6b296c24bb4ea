"""Shared fixtures for the pricing test-suite."""
import pytest
import structlog

from src.models import ModelFamily, ModelSpec
from src.payoffs import PayoffFamily, PayoffSpec


@pytest.fixture(autouse=True)
def reset_structlog():
    """CLI tests bind structlog to a temporary stream; restore the defaults afterwards"""
    yield
    structlog.reset_defaults()


@pytest.fixture
def gbm_2d() -> ModelSpec:
    return ModelSpec(family=ModelFamily.GBM, spot=(100.0, 100.0), maturity=1.0, sigma=(0.4, 0.4))


@pytest.fixture
def vg_2d() -> ModelSpec:
    return ModelSpec(
        family=ModelFamily.VG, spot=(100.0, 100.0), maturity=1.0,
        sigma=(0.4, 0.4), theta=(-0.3, -0.3), nu=0.257,
    )


@pytest.fixture
def nig_2d() -> ModelSpec:
    return ModelSpec(
        family=ModelFamily.NIG, spot=(100.0, 100.0), maturity=1.0,
        alpha=15.0, beta=(-3.0, -3.0), delta=0.2,
    )


@pytest.fixture
def put_2d() -> PayoffSpec:
    return PayoffSpec(family=PayoffFamily.BASKET_PUT, strike=100.0, d=2)


@pytest.fixture
def call_on_min_2d() -> PayoffSpec:
    return PayoffSpec(family=PayoffFamily.CALL_ON_MIN, strike=100.0, d=2)
