def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running acceptance suites")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance")
    for key in sorted(mod.LINES):
        terminalreporter.write_line(mod.LINES[key])
