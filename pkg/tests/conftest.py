import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def record():
    """Record one acceptance-criterion outcome for the end-of-run summary."""

    def _record(criterion: str, passed: bool, detail: str):
        line = f"{'PASS' if passed else 'FAIL'} [{criterion}] {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
