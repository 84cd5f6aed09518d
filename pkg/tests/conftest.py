import pytest

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def report_line():
    def record(k: int, ok: bool, detail: str = "") -> None:
        line = f"criterion {k}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES[k] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
