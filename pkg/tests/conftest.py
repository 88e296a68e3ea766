import pytest

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line[1])


@pytest.fixture
def record_acceptance():
    def record(number, line):
        ACCEPTANCE_LINES.append((number, line))

    return record
