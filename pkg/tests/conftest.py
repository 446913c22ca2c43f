import pytest

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    number, title = crit
    ok, details, _ = _results.get(number, (True, [], title))
    detail = dict(report.user_properties).get("detail")
    if detail:
        details.append(detail)
    _results[number] = (ok and report.passed, details, title)


@pytest.fixture(autouse=True)
def _criterion_tag(request, record_property):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        record_property("criterion", tuple(marker.args))


@pytest.fixture
def detail(record_property):
    """Attach a one-line measurement to the acceptance summary."""
    return lambda text: record_property("detail", text)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        ok, details, title = _results[number]
        line = f"criterion {number} ({title}): {'PASS' if ok else 'FAIL'}"
        if details:
            line += " - " + "; ".join(details)
        terminalreporter.write_line(line)
