import json

import pytest

from hyperkube.cli import fixture_path, parse_diagram_file


def load(name):
    return parse_diagram_file(fixture_path(name))


def load_raw(name):
    return json.loads(fixture_path(name).read_text())


@pytest.fixture(scope="session")
def std():
    return load("standard_torus.json")


@pytest.fixture(scope="session")
def hopf_linked():
    return load("hopf_linked.json")


@pytest.fixture(scope="session")
def once_linked():
    return load("once_linked.json")


@pytest.fixture(scope="session")
def trefoil_h():
    return load("trefoil.json")


def random_valid(n, rng, tries=500):
    """A crossing-valid hypercube of size n drawn by rejection, or None."""
    from hyperkube.errors import ValidationError
    from hyperkube.hypercube import generate_markings, validate_hypercube

    for _ in range(tries):
        m = generate_markings(n, rng=rng)
        try:
            return validate_hypercube(n, m.W, m.X, m.Y, m.Z)
        except ValidationError:
            continue
    return None


# one pass/fail line per acceptance criterion -----------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion covered by a test")


def pytest_runtest_logreport(report):
    crit = getattr(report, "_criterion", None)
    if crit is None:
        return
    if report.when == "call" or report.outcome != "passed":
        ok = report.outcome == "passed"
        prev = _CRITERIA.get(crit, (True, ""))
        _CRITERIA[crit] = (prev[0] and ok, crit[1])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result()._criterion = (mark.args[0], mark.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (n, title), (ok, _) in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {title}")
