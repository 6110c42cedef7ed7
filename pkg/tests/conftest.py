_verdicts: dict[int, tuple[str, str, list]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = dict(report.user_properties).get("acceptance")
    if marker is None:
        return
    number, title = marker
    details = [v for k, v in report.user_properties if k == "detail"]
    _verdicts[number] = ("PASS" if report.passed else "FAIL", title, details)


def pytest_runtest_setup(item):
    marker = item.get_closest_marker("acceptance")
    if marker:
        item.user_properties.append(("acceptance", tuple(marker.args)))


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_verdicts):
        verdict, title, details = _verdicts[number]
        line = f"[{verdict}] {number:>2}. {title}"
        if details:
            line += "  (" + "; ".join(details) + ")"
        terminalreporter.write_line(line)
