from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

import pytest

ACCEPTANCE: list[tuple[int, bool, float, str]] = []


@pytest.fixture
def verdict():
    """Record one acceptance line: ``verdict(number, passed, seconds, detail)``."""

    def record(number: int, passed: bool, seconds: float, detail: str = "") -> None:
        ACCEPTANCE.append((number, passed, seconds, detail))
        print(_line(number, passed, seconds, detail))

    return record


def _line(number, passed, seconds, detail):
    return f"criterion {number}: {'PASS' if passed else 'FAIL'} ({seconds:.2f} s){' ' + detail if detail else ''}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for row in sorted(ACCEPTANCE):
        terminalreporter.write_line(_line(*row))
