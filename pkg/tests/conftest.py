import pytest

from shagraph.groups import named_group


@pytest.fixture(scope="session")
def z2():
    return named_group("z2")


@pytest.fixture(scope="session")
def s3():
    return named_group("s3")


def pytest_terminal_summary(terminalreporter):
    from tests_support import ACCEPTANCE

    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
