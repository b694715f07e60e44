import math
from functools import lru_cache

import pytest

from chebdecay import builtin_example, parse

EXAMPLE51 = "on [-1,1]: piece [-1,0): -t/(t+2); piece [0,1]: t/(t+2); k=1"
V_WEIGHTED = 1.0 + 2.0 * math.pi / math.sqrt(3.0)
V_TOTAL = 25.0 / 9.0


@lru_cache(maxsize=None)
def cheb_text(n: int) -> str:
    """Formula for T_n built from the doubling identities.

    T_2m = 2 T_m^2 - 1 and T_2m+1 = 2 T_m T_m+1 - t keep every intermediate
    value in [-1, 1], unlike the monomial expansion.
    """
    if n == 0:
        return "1"
    if n == 1:
        return "t"
    m = n // 2
    if n % 2 == 0:
        return f"(2*({cheb_text(m)})^2 - 1)"
    return f"(2*({cheb_text(m)})*({cheb_text(m + 1)}) - t)"


def cheb_spec(n: int, k: int = 3):
    return parse(f"on [-1,1]: {cheb_text(n)}; k={k}")


@pytest.fixture(scope="session")
def g():
    return builtin_example("example51")


# one line per acceptance criterion in the terminal summary

_CRITERIA: dict[int, dict] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            num, text = mark.args
            _CRITERIA.setdefault(num, {"text": text, "outcomes": []})


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for num, info in _CRITERIA.items():
        if f"criterion_{num:02d}" in report.nodeid:
            info["outcomes"].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        info = _CRITERIA[num]
        outs = info["outcomes"]
        if not outs:
            status = "NOT RUN"
        elif all(o == "passed" for o in outs):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {num:2d}: {info['text']}")
