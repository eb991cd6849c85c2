from pathlib import Path

import pytest

from toolscan import fixtures
from toolscan.pipeline import scan

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def fixture_bin():
    return fixtures.fixture_path


@pytest.fixture(scope="session")
def secret_mount(tmp_path_factory):
    return fixtures.write_secret_mount(tmp_path_factory.mktemp("mount"))


@pytest.fixture(scope="session")
def case_reports(secret_mount):
    """Reports for the case studies and the exfiltrator, scanned once per session."""
    reports = {name: scan(fixtures.standard_config(name)) for name in fixtures.CASE_STUDIES}
    reports["obfuscated_fs"] = scan(fixtures.standard_config("obfuscated_fs"))
    reports["exfiltrator"] = scan(fixtures.standard_config("exfiltrator", mount=secret_mount))
    return reports


_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[number] = (title, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, verdict = _criteria[number]
        terminalreporter.write_line(f"[{verdict}] criterion {number:>2}: {title}")
