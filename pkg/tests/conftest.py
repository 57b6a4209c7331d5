import numpy as np
import pytest

from kd_abelian.groups import make_group

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}

SMALL_GROUPS = [(2,), (3,), (4,), (5,), (6,), (8,), (2, 2), (2, 4), (3, 3)]
IDENTITY_GROUPS = [(5,), (6,), (8,), (2, 2), (2, 4)]


@pytest.fixture
def rng():
    return np.random.default_rng(20241017)


@pytest.fixture(params=SMALL_GROUPS, ids=lambda o: "x".join(f"Z{d}" for d in o))
def group(request):
    return make_group(request.param)


def record(criterion: str, passed: bool, detail: str = ""):
    ACCEPTANCE_RESULTS[criterion] = (passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {name}  {detail}")
