import pytest
from hypothesis import HealthCheck, settings

from fictio.config import use_config

settings.register_profile(
    "fictio", max_examples=100, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fictio")


@pytest.fixture
def exact():
    with use_config(mode="exact") as cfg:
        yield cfg


@pytest.fixture
def numeric():
    with use_config(mode="numeric") as cfg:
        yield cfg


@pytest.fixture(autouse=True)
def _no_config_file(monkeypatch):
    monkeypatch.delenv("FICTIO_CONFIG", raising=False)
