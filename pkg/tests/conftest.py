import time

import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request):
    """Run ``body`` under a wall-clock limit and log one PASS/FAIL line."""

    def run(number: int, title: str, body, limit: float | None = None):
        start = time.perf_counter()
        failure = None
        try:
            body()
        except AssertionError as exc:
            failure = exc
        elapsed = time.perf_counter() - start
        in_time = limit is None or elapsed < limit
        ok = failure is None and in_time
        budget = f" (limit {limit:g}s)" if limit else ""
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}  [{elapsed:.2f}s{budget}]"
        print(line)
        request.config.stash[_LINES].append(line)
        if failure is not None:
            raise failure
        assert in_time, f"took {elapsed:.2f}s, limit {limit}s"

    return run


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
