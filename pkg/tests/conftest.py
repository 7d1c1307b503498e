import pytest
from hypothesis import settings

from hyperfol.catalog import get_entry

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def _dec(name):
    return get_entry(name).realize()[1]


@pytest.fixture(scope="session")
def sl2r():
    return _dec("SL2R")


@pytest.fixture(scope="session")
def sl3r():
    return _dec("SL3R")


@pytest.fixture(scope="session")
def sl4r():
    return _dec("SL4R")


@pytest.fixture(scope="session")
def sl2c():
    return _dec("SL2C")


@pytest.fixture(scope="session")
def su12():
    return _dec("SU12")


ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, passed: bool, detail: str) -> str:
    line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
