import sys

import pytest
from hypothesis import HealthCheck, settings

from wellscoped import indices

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@pytest.fixture
def checked():
    """Run the test with term-walking scope checks switched on."""
    with indices.checking(True):
        yield


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
