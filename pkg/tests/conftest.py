import pytest
from hypothesis import settings

settings.register_profile("workbench", deadline=None, max_examples=50, derandomize=True)
settings.load_profile("workbench")


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path_factory, monkeypatch):
    monkeypatch.setenv("COADJOINT_WORKBENCH_CACHE", str(tmp_path_factory.getbasetemp() / "module-cache"))
    yield


@pytest.fixture(scope="session")
def src():
    from coadjoint_workbench.arith import RandomSource

    return RandomSource(20240611)


def pytest_report_header(config):
    from coadjoint_workbench.arith import DEFAULT_PRIMES

    return f"workbench primes: {DEFAULT_PRIMES[0]}, {DEFAULT_PRIMES[1]}"


# -- acceptance summary -------------------------------------------------------

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title, tolerance): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n, title, tol = mark.args
    entry = _CRITERIA.setdefault(n, {"title": title, "tolerance": tol, "passed": True, "tests": 0})
    if rep.when == "call":
        entry["tests"] += 1
    if rep.failed or (rep.when == "setup" and rep.skipped):
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        status = "PASS" if e["passed"] and e["tests"] else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {e['title']}  [tolerance: {e['tolerance']}; {e['tests']} tests]")
