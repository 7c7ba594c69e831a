import pytest

from bicalc import build_group, make_calculus


@pytest.fixture(scope="session")
def s3():
    return build_group("s3")


@pytest.fixture(scope="session")
def bc1(s3):
    return make_calculus(s3, "a")


@pytest.fixture(scope="session")
def bc2(s3):
    return make_calculus(s3, "ab")


@pytest.fixture(scope="session")
def bc12(s3):
    return make_calculus(s3, "a,ab")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    RESULTS, TITLES = mod.RESULTS, mod.TITLES
    terminalreporter.section("acceptance criteria")
    for n in sorted(TITLES):
        status = RESULTS.get(n)
        word = "NOT RUN" if status is None else ("PASS" if status[0] else "FAIL")
        detail = "" if status is None or not status[1] else f"  [{status[1]}]"
        terminalreporter.write_line(f"criterion {n:2d} {word}: {TITLES[n]}{detail}")
