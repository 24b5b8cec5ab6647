import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from isovariant.groups import named_group  # noqa: E402

BATTERY = ("c2", "c3", "c4", "v4", "s3", "d4")
BATTERY_WITH_Q8 = BATTERY + ("q8",)

_criteria: dict[int, dict] = {}


@pytest.fixture(scope="session")
def groups():
    return {name: named_group(name) for name in BATTERY_WITH_Q8}


def pytest_runtest_logreport(report):
    match = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+?)(\[.*\])?$", report.nodeid)
    if not match:
        return
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    number = int(match.group(1))
    entry = _criteria.setdefault(number, {"name": match.group(2).replace("_", " "), "passed": 0, "failed": 0, "time": 0.0})
    entry["passed" if report.outcome == "passed" else "failed"] += 1
    entry["time"] += report.duration


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["failed"] == 0 else "FAIL"
        total = entry["passed"] + entry["failed"]
        terminalreporter.write_line(
            f"criterion {number:2d} {status}  {entry['name']}  ({entry['passed']}/{total} cases, {entry['time']:.1f}s)"
        )
