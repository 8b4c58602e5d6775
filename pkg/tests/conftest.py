import shutil

import pytest

from reflind.benchgen import builtin_theory
from reflind.serialize.surface import parse_formula, parse_term


def sig_of(name):
    return builtin_theory(name).signature


def F(text, theory="E"):
    return parse_formula(text, sig_of(theory))


def T(text, theory="N+Add"):
    return parse_term(text, sig_of(theory))


def sort(theory, name):
    return sig_of(theory).sort(name)


def fun(theory, name):
    return sig_of(theory).fun(name)


requires_z3 = pytest.mark.skipif(shutil.which("z3") is None, reason="z3 not installed")


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
