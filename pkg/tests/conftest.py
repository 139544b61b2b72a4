import pytest

from propcoh.fincat import builtin_base
from propcoh.presheaf import mk_presheaf, mk_subpresheaf, yoneda

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def pt():
    return builtin_base("pt")


@pytest.fixture
def arr():
    return builtin_base("arr")


@pytest.fixture
def span():
    return builtin_base("span")


@pytest.fixture
def g1(pt):
    return mk_presheaf(pt, {"o": ["*"]}, {})


@pytest.fixture
def g3(pt):
    return mk_presheaf(pt, {"o": ["0", "1", "2"]}, {})


@pytest.fixture
def p01(g3):
    return mk_subpresheaf(g3, {"o": ["0", "1"]})


@pytest.fixture
def yb(arr):
    return yoneda(arr, "b")


@pytest.fixture
def pa(yb):
    return mk_subpresheaf(yb, {"a": ["f"]})
