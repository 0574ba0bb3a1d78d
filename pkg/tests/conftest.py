import sys

import pytest

from superyangian.context import make_context


@pytest.fixture
def c11():
    return make_context(3, 1, 1, "01")


@pytest.fixture
def c21():
    return make_context(5, 2, 1, "010")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
