import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_criteria: dict[int, tuple[str, str]] = {}
_notes: list[str] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid or "criterion_" not in report.nodeid:
        return
    if report.when != "call" and report.passed:
        return
    num = int(report.nodeid.split("criterion_")[1].split("_")[0])
    title = report.nodeid.split("criterion_")[1].split("_", 1)[1].replace("_", " ")
    status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
    prev = _criteria.get(num)
    if prev is None or prev[0] == "PASS":
        _criteria[num] = (status, title)
    for name, content in report.user_properties:
        if name == "note":
            _notes.append(f"criterion {num}: {content}")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_criteria):
        status, title = _criteria[num]
        tr.write_line(f"criterion {num}: {status}  {title}")
    for note in _notes:
        tr.write_line(f"note  {note}")
