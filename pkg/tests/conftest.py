import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line; the lines are echoed in the terminal summary."""

    def _report(label: str, ok: bool, detail: str, seconds: float):
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail} [{seconds:.1f} s]"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
