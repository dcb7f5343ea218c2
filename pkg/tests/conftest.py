import pytest

from speciallab import make_mn, make_pi


@pytest.fixture(scope="session")
def t2():
    return make_pi(2).to_rewrite_system()


@pytest.fixture(scope="session")
def t3():
    return make_pi(3).to_rewrite_system()


@pytest.fixture(scope="session")
def m2():
    return make_mn(2).to_rewrite_system()


_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
