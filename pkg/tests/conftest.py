import pytest

from hulthen.spectrum import PhysicalSystem
from hulthen.tables import load_tables

_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance(request):
    """``record(name, checks)`` with ``checks = [(label, ok, detail), ...]``.

    Stores one ``PASS``/``FAIL`` line for the terminal summary and asserts.
    """

    def record(name, checks):
        ok = all(c[1] for c in checks)
        shown = [c for c in checks if not c[1]] or checks
        detail = "; ".join(f"{c[0]}: {c[2]}" for c in shown)
        line = f"{'PASS' if ok else 'FAIL'} criterion {name} -- {detail}"
        request.config.stash[_ACCEPTANCE].append((name, line))
        assert ok, detail

    return record


@pytest.fixture(scope="session")
def atomic():
    """Atomic units at the weakest table screening."""
    return PhysicalSystem(0.025)


@pytest.fixture(scope="session")
def tables():
    return load_tables()
