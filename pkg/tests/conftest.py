import pytest

REPORT: list[str] = []


@pytest.fixture
def report():
    return REPORT.append


def pytest_terminal_summary(terminalreporter):
    if REPORT:
        terminalreporter.section("acceptance")
        for line in REPORT:
            terminalreporter.write_line(line)
