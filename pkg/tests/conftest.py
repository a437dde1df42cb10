from pathlib import Path

import pytest

from squaretile.search import TileTable

DATA = Path(__file__).parent / "data"

_acceptance: dict[str, str] = {}


@pytest.fixture(scope="session")
def table1() -> TileTable:
    """Table 1 transcribed from the published checkmark grid."""
    return TileTable.from_text((DATA / "table1.txt").read_text())


@pytest.fixture
def data_dir() -> Path:
    return DATA


def pytest_runtest_logreport(report):
    criterion = dict(report.user_properties).get("criterion")
    if criterion is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _acceptance[criterion] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance, key=lambda k: int(k.split()[0])):
        terminalreporter.write_line(f"[{_acceptance[name]}] criterion {name}")
