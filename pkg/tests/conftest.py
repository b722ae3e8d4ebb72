import pytest
from hypothesis import settings

from galois_forge.forge import paper_example

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

REFERENCE_COEFFS = (133, 65, 26, 85, 15, 30, 24, -10, 1)

_acceptance_lines = []


@pytest.fixture
def reference_f():
    return paper_example()


@pytest.fixture
def report():
    """Record one human-readable pass/fail line per acceptance criterion."""

    def record(criterion, passed, detail=""):
        _acceptance_lines.append(f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
