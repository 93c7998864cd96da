import math

import pytest
from hypothesis import HealthCheck, settings

from betashift import make_context

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")

GOLDEN = (1 + math.sqrt(5)) / 2

FAMILY_TAGS = ("dyadic", "golden", "tribonacci", "parry:2")
TEST_BETAS = FAMILY_TAGS + (1.8,)


@pytest.fixture(scope="session")
def contexts():
    return {tag: make_context(tag) for tag in TEST_BETAS + ("parry:3", 1.7, 1.9)}


@pytest.fixture(scope="session")
def dyadic(contexts):
    return contexts["dyadic"]


@pytest.fixture(scope="session")
def golden(contexts):
    return contexts["golden"]


@pytest.fixture(scope="session")
def tribonacci(contexts):
    return contexts["tribonacci"]


@pytest.fixture(scope="session")
def parry2(contexts):
    return contexts["parry:2"]


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
