import pytest

from quiverkac.kac import clear_memo
from quiverkac.quiver import Quiver, a_n, equipped_graph_from_edges, jordan, kronecker


@pytest.fixture
def A2():
    return Quiver.from_edges(["1", "2"], [("a", "1", "2")])


@pytest.fixture
def A2op():
    return Quiver.from_edges(["1", "2"], [("a", "2", "1")])


@pytest.fixture
def A3():
    return a_n(3)


@pytest.fixture
def K():
    return kronecker()


@pytest.fixture
def J():
    return jordan()


def single_edge(phi):
    return equipped_graph_from_edges(["1", "2"], [("e", "1", "2", *phi)])


@pytest.fixture
def fresh_memo():
    clear_memo()
    yield
    clear_memo()


_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_runtest_logreport(report):
    mark = getattr(report, "criterion", None)
    if mark is None:
        return
    if report.when == "call" or report.failed:
        prev = _criteria.get(mark, True)
        _criteria[mark] = prev and report.passed


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    m = item.get_closest_marker("criterion")
    if m is not None:
        outcome.get_result().criterion = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (n, title), ok in sorted(_criteria.items()):
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}")
