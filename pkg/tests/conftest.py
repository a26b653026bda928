import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        parts = mod.RESULTS[number]
        ok = all(p[1] for p in parts)
        tr.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {mod.TITLES[number]}")
        for name, passed, detail in parts:
            tr.write_line(f"    {'pass' if passed else 'FAIL'}  {name}: {detail}")
