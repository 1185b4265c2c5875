import functools

import pytest

from substfreq.frid import gtm_context
from substfreq.language import build_index

FAMILY = [(2, 2), (2, 3), (3, 3), (3, 4), (4, 3)]
APERIODIC = [(2, 2), (2, 3), (3, 3), (3, 4)]

_acceptance_lines: list[str] = []


@functools.lru_cache(maxsize=None)
def frid(b, m):
    return gtm_context(b, m)


@functools.lru_cache(maxsize=None)
def index(b, m, depth):
    ctx = frid(b, m)
    return build_index(ctx.morphism, 0, depth)


@pytest.fixture
def t22():
    return frid(2, 2)


@pytest.fixture
def record():
    def _record(criterion, ok, detail=""):
        _acceptance_lines.append(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
