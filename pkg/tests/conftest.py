import pytest

from trimodel import load_fixture

CRITERIA = {
    1: "backend soundness",
    2: "proper-class axioms",
    3: "extension groups",
    4: "cotorsion suite",
    5: "model lattice biconditional",
    6: "model/pair correspondence",
    7: "Hovey suite",
    8: "homotopy suite",
    9: "CLI determinism",
}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion exercised by the test")
    config._criteria = {}


def pytest_runtest_logreport(report):
    crit = getattr(report, "_criterion", None)
    if crit is None:
        return
    if report.when == "call" or report.outcome != "passed":
        ok = report.outcome == "passed"
        store = _store.setdefault(crit, [])
        store.append((report.nodeid, ok, report.duration))


_store: dict[int, list] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        rep._criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _store:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        runs = _store.get(n)
        if not runs:
            continue
        ok = all(r[1] for r in runs)
        secs = sum(r[2] for r in runs)
        terminalreporter.write_line(f"criterion {n} ({CRITERIA[n]}): {'PASS' if ok else 'FAIL'} [{len(runs)} tests, {secs:.1f}s]")


@pytest.fixture(scope="session")
def n3():
    return load_fixture("n3")


@pytest.fixture(scope="session")
def vec():
    return load_fixture("vec")
