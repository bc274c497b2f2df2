import pytest

from eating.fixtures import register_paper_fixtures

ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def reg():
    return register_paper_fixtures()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number])
