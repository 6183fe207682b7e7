import os

import pytest
from hypothesis import HealthCheck, settings

from qborcherds import catalog

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=15, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "data")


@pytest.fixture(params=catalog.names())
def named_datum(request):
    return request.param, catalog.datum(request.param)


@pytest.fixture
def a1():
    return catalog.datum("a1")


@pytest.fixture
def bsup():
    return catalog.datum("borcherds_super")


@pytest.fixture
def bor():
    return catalog.datum("borcherds_iso")
