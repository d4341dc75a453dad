from pathlib import Path

import pytest

from libinvest.lexicon import CPP_THESIS

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def cpp():
    return CPP_THESIS


@pytest.fixture
def table1_source():
    return (FIXTURES / "table1_sample.cpp").read_text()


@pytest.fixture
def table4_program():
    return (FIXTURES / "table4" / "program" / "main.cpp").read_text()


@pytest.fixture
def table4_library():
    return (FIXTURES / "table4" / "library" / "Stack.cpp").read_text()


_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion.

    Usage: ``with criterion(3, "title") as check: check(name, ok)``; the
    block fails if any sub-check failed, after all of them have run.
    """
    lines = request.config.stash[_LINES]

    class _Recorder:
        def __init__(self, number, title):
            self.number, self.title, self.failed = number, title, []

        def __call__(self, name, ok, detail=""):
            if not ok:
                self.failed.append(f"{name} ({detail})" if detail else name)
            return ok

        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            if exc_type is not None:
                self.failed.append(f"{exc_type.__name__}: {exc}")
            status = "FAIL" if self.failed else "PASS"
            line = f"criterion {self.number} {status}: {self.title}"
            if self.failed:
                line += " -- " + "; ".join(self.failed)
            lines.append(line)
            print(line)
            if exc_type is None and self.failed:
                pytest.fail(line, pytrace=False)
            return False

    return _Recorder


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
