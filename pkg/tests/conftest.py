import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--n11", action="store_true", default=False, help="also run the n = 11 sweep")


def pytest_configure(config):
    config.addinivalue_line("markers", "n11: the n = 11 sweep, enabled with --n11")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--n11"):
        return
    skip = pytest.mark.skip(reason="needs --n11")
    for item in items:
        if "n11" in item.keywords:
            item.add_marker(skip)
