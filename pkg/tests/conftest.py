def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    verdicts = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            short = getattr(rep, "nodeid", "").rsplit("::", 1)[-1]
            if not short.startswith("test_criterion_"):
                continue
            if verdicts.get(short) != "FAIL":
                verdicts[short] = "PASS" if outcome == "passed" else "FAIL"
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for short in sorted(verdicts):
        num, _, rest = short[len("test_criterion_"):].partition("_")
        terminalreporter.write_line(
            "criterion %s: %s  (%s)" % (num, verdicts[short], rest.replace("_", " "))
        )
