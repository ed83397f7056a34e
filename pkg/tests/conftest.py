import pytest

from torusnef import build_bsdh, build_root_system

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def a2():
    return build_root_system("A2")


@pytest.fixture
def z12():
    return build_bsdh("A2", (1, 2))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
