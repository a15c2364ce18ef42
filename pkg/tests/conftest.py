import pytest

ACCEPTANCE = []


def record(number, ok, text, label=None):
    ACCEPTANCE.append((number, ok, text, label or f"criterion {number}"))


@pytest.fixture
def acceptance():
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria (tolerance: exact)")
    for number, ok, text, label in sorted(ACCEPTANCE, key=lambda t: t[0]):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {label}: {text}")
