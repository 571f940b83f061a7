import numpy as np
import pytest

from qumi.optimizer import SearchConfig

# acceptance results, filled by tests/test_acceptance.py
_CRITERIA: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def quick_cfg():
    return SearchConfig(grid_polar=16, grid_azimuthal=32)


@pytest.fixture
def record_criterion():
    """Store (title, passed, detail) for the end-of-run criterion table."""
    def record(number: int, title: str, passed: bool, detail: str = "") -> bool:
        _CRITERIA[number] = (title, bool(passed), detail)
        return bool(passed)
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok, detail = _CRITERIA[number]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {number:2d}: {title}  {detail}".rstrip())
