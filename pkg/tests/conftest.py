def pytest_terminal_summary(terminalreporter):
    import acceptance_report

    if acceptance_report.lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_report.lines:
            terminalreporter.write_line(line)
