"""
Inflex — Fixtures compartidas de pytest
"""
import pytest

from inflex.core.algebra import parse_poly

WEIERSTRASS_P3_HALF = "-1/16*x^6 - 5/16*lam*x^4 - 5/2*x^3 + 5/16*lam^2*x^2 + 1/2*lam*x + 2 + 1/16*lam^3"


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow computations")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def weierstrass_p3():
    return parse_poly(WEIERSTRASS_P3_HALF)


@pytest.fixture
def harness_config():
    """Config without file or environment influence."""
    from inflex.services.config_loader import HARNESS_DEFAULTS
    return {**HARNESS_DEFAULTS, "m_ranges": {}}
