import pytest

from stpricing import make_finite

ACCEPTANCE = []


@pytest.fixture
def die():
    return make_finite([(i, 1 / 6) for i in range(1, 7)])


@pytest.fixture
def record():
    """Record one acceptance criterion; assert after recording so failures still print."""

    def _record(number, name, ok, detail=""):
        ACCEPTANCE.append((number, name, bool(ok), detail))
        assert ok, f"criterion {number} ({name}) failed: {detail}"

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, detail in sorted(ACCEPTANCE):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {name}  {detail}")
