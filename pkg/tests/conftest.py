"""Print one PASS/FAIL line per acceptance criterion after the test run."""

import re

_ACCEPT_RE = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_?(\w*)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = {}
    for outcome in ("passed", "failed", "error", "skipped"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            m = _ACCEPT_RE.search(nodeid)
            if not m:
                continue
            num = int(m.group(1))
            name = m.group(2)
            status = "PASS" if outcome == "passed" else "FAIL"
            dur = getattr(report, "duration", 0.0)
            prev = results.get(num)
            if prev is not None and prev[0] == "FAIL":
                status = "FAIL"   # a failed setup/call stays failed
            if prev is not None:
                dur = max(dur, prev[2])
            results[num] = (status, name, dur)
    if not results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num in sorted(results):
        status, name, dur = results[num]
        terminalreporter.write_line(
            "ACCEPTANCE %d: %s  %s (%.2f s)" % (num, status, name, dur))
