import functools

import pytest

from petersen_conflict.family import FAMILY_NAMES, family_member
from petersen_conflict.report import analyse


@functools.lru_cache(maxsize=None)
def host_analysis(name: str):
    return analyse(name)


@pytest.fixture(scope="session")
def analyses():
    return {n: host_analysis(n) for n in FAMILY_NAMES}


@pytest.fixture(scope="session")
def members():
    return {n: family_member(n) for n in FAMILY_NAMES}


ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture
def acceptance_log(request):
    """Record ``(criterion, passed, detail)`` for the end-of-run summary."""
    log = request.config.stash.setdefault(ACCEPTANCE_KEY, {})

    def record(number: int, passed: bool, detail: str) -> bool:
        log[number] = (passed, detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(ACCEPTANCE_KEY, {})
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(log):
        passed, detail = log[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
