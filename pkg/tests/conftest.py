_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion check")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None:
            number, title = m.args
            entry = _criteria.setdefault(number, {"title": title, "ids": set(), "failed": set(), "done": set()})
            entry["ids"].add(item.nodeid)


def pytest_runtest_logreport(report):
    for entry in _criteria.values():
        if report.nodeid in entry["ids"]:
            if report.failed:
                entry["failed"].add(report.nodeid)
            if report.when == "call" or report.failed or report.skipped:
                entry["done"].add(report.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        if entry["done"] != entry["ids"]:
            status = "NOT RUN"
        else:
            status = "FAIL" if entry["failed"] else "PASS"
        terminalreporter.write_line(f"ACCEPTANCE {number} {entry['title']}: {status}")
