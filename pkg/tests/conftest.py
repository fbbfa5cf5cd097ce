import numpy as np
import pytest

from bidisc.catalog import catalog

CATALOG = catalog()
NAMES = [n for n, _ in CATALOG]
MEASURES = dict(CATALOG)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=NAMES)
def measure(request):
    return MEASURES[request.param]


ACCEPTANCE = {}


def record(number, title, ok, detail=""):
    ACCEPTANCE[number] = (title, bool(ok), detail)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        tr.write_line(f"[{'PASS' if ok else 'FAIL'}] {n:>2}. {title}  {detail}")
