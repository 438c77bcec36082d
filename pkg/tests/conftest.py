import pytest

from lubintate.formal_group import build_formal_group
from lubintate.operators import OperatorContext
from lubintate.padic import rational_field


@pytest.fixture(scope="session")
def Q3():
    return rational_field(3, 30)


@pytest.fixture(scope="session")
def gm(Q3):
    return build_formal_group(Q3, "gm_hat", z_order=40)


@pytest.fixture(scope="session")
def basic(Q3):
    return build_formal_group(Q3, "basic", z_order=40)


@pytest.fixture(scope="session")
def gm_ctx(gm):
    return OperatorContext(gm)


@pytest.fixture(scope="session")
def basic_ctx(basic):
    return OperatorContext(basic)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
