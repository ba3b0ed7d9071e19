import pytest

from bondskein.reference import load_data

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def fixture_diagram():
    return load_data


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
