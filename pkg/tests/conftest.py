import numpy as np
import pytest

_CRITERIA = []


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        _CRITERIA.append((props["criterion"], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    grouped = {}
    for name, outcome in _CRITERIA:
        grouped.setdefault(name, []).append(outcome == "passed")
    terminalreporter.section("acceptance criteria")
    for name in sorted(grouped, key=lambda c: int(c.split(".")[0])):
        ok = grouped[name]
        terminalreporter.write_line(f"{'PASS' if all(ok) else 'FAIL'}  {name}  ({sum(ok)}/{len(ok)} cases)")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
