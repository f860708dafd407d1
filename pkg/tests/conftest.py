import pytest

_RESULTS_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config.stash[_RESULTS_KEY] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    detail = "; ".join(f"{k}={v}" for k, v in item.user_properties)
    item.config.stash[_RESULTS_KEY].append((number, title, report.passed, detail))


def pytest_terminal_summary(terminalreporter, config):
    results = sorted(config.stash[_RESULTS_KEY])
    if not results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number, title, passed, detail in results:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:>2}. {title}" + (f"  ({detail})" if detail else ""))
