import contextlib

import pytest

ACCEPTANCE_RESULTS = {}


@pytest.fixture
def criterion():
    """Record the outcome of an acceptance criterion for the terminal summary."""

    @contextlib.contextmanager
    def record(number, title):
        try:
            yield
        except BaseException as exc:
            ACCEPTANCE_RESULTS[number] = ("FAIL", f"{title} ({type(exc).__name__}: {exc})")
            print(f"criterion {number:2d}: FAIL  {title}")
            raise
        ACCEPTANCE_RESULTS[number] = ("PASS", title)
        print(f"criterion {number:2d}: PASS  {title}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        verdict, title = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  {title}")
