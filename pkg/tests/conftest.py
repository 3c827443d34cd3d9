import helpers


def pytest_terminal_summary(terminalreporter):
    if not helpers.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(helpers.RESULTS):
        terminalreporter.write_line(helpers.RESULTS[num])
