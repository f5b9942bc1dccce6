import time
from contextlib import contextmanager

import pytest

RESULTS = pytest.StashKey[dict]()


class Recorder:
    """Collects one pass/fail line per acceptance criterion."""

    def __init__(self, results: dict, capsys):
        self.results = results
        self.capsys = capsys

    @contextmanager
    def criterion(self, number: int, title: str):
        start = time.perf_counter()
        notes = []
        status = "FAIL"
        try:
            yield notes
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - start
            extra = f" [{'; '.join(notes)}]" if notes else ""
            line = f"criterion {number} {status}: {title} ({elapsed:.1f}s){extra}"
            self.results[number] = line
            with self.capsys.disabled():
                print("\n" + line)


@pytest.fixture
def acceptance(request, capsys):
    return Recorder(request.config.stash.setdefault(RESULTS, {}), capsys)


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(RESULTS, {})
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
