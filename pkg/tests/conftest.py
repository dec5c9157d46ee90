import time

import pytest

from zerocycles import depezzo

_REPORTS = {}


def suite(p: int, e_max: int = 2):
    """Full verification report for default parameters, computed once per session."""
    key = (p, e_max)
    if key not in _REPORTS:
        t0 = time.perf_counter()
        rep = depezzo.run_all(depezzo.ModelParams(p=p, e_max=e_max))
        _REPORTS[key] = (rep, time.perf_counter() - t0)
    return _REPORTS[key]


@pytest.fixture(scope="session")
def suite3():
    return suite(3)


@pytest.fixture(scope="session")
def suite7():
    return suite(7)
