import sys
from pathlib import Path

import pytest

try:
    from hypothesis import settings

    settings.register_profile("default", max_examples=40, deadline=None)
    settings.load_profile("default")
except ImportError:  # pragma: no cover
    pass

ACCEPTANCE = {}


@pytest.fixture
def acceptance():
    """Record ``(number, title, passed, detail)`` for the end-of-run acceptance summary."""

    def record(number, title, passed, detail=""):
        ACCEPTANCE[number] = (title, bool(passed), detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  {title}  {detail}".rstrip())
