import pytest

from srgcensus.catalog import build_classifier, hamiltonian_catalog
from srgcensus.srg import construct


@pytest.fixture(scope="session", autouse=True)
def _isolated_cache(tmp_path_factory):
    mp = pytest.MonkeyPatch()
    mp.setenv("SRGCENSUS_CACHE_DIR", str(tmp_path_factory.mktemp("cache")))
    yield
    mp.undo()


@pytest.fixture(scope="session")
def catalog7():
    return hamiltonian_catalog()


@pytest.fixture(scope="session")
def classifier(catalog7):
    return build_classifier(catalog7)


@pytest.fixture(scope="session")
def rook():
    return construct("rook3x3")


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance line and fail the test if the criterion does not hold."""

    def record(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] AC{number} {title}" + (f" -- {detail}" if detail else "")
        _ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
