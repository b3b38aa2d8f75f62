import functools

import pytest

from niho13.field import build_field
from niho13.parameters import validate_params

# (p, n) pairs small enough for per-test enumeration
SMALL_FIELDS = [(7, 1), (7, 2), (7, 3), (13, 1), (13, 2), (13, 3), (19, 2), (31, 2)]
SMALL_ADMISSIBLE = [(7, 2, 0), (7, 2, 1), (7, 3, 0), (7, 3, 1), (7, 3, 2), (13, 1, 0), (13, 3, 0), (19, 1, 0)]


@functools.lru_cache(maxsize=None)
def field(p, n):
    return build_field(p, n)


@functools.lru_cache(maxsize=None)
def setup(p, n, i):
    return validate_params(p, n, i), field(p, n)


@pytest.fixture
def get_field():
    return field


@pytest.fixture
def get_setup():
    return setup


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        ok, title, detail = mod.RESULTS[k]
        terminalreporter.write_line(f"criterion {k} {'PASS' if ok else 'FAIL'}: {title} - {detail}")
