from pathlib import Path

import pytest

from crprolog.model import Literal, context
from crprolog.parser import parse_program

PROGRAMS = Path(__file__).parent / "programs"

# filled by test_acceptance, printed after the run
ACCEPTANCE_LINES = []


def L(text):
    return Literal.parse(text)


@pytest.fixture
def chain_program():
    return parse_program((PROGRAMS / "cr_chain.lp").read_text())


@pytest.fixture
def subproof_program():
    return parse_program((PROGRAMS / "nonminimal_subproof.lp").read_text())


@pytest.fixture
def subproof_answer():
    return context(["a", "b", "c", "c1x", "c1y", "c2"])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
