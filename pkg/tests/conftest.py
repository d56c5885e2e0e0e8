import pytest

from argrank.af_core import AF

F1_APX = "arg(a). arg(b). arg(c). arg(d).\natt(a,b). att(b,c). att(c,d). att(d,c).\n"
F2_ATTACKS = [("a", "b"), ("b", "a"), ("b", "c"), ("a", "c"), ("c", "d")]
F3_ATTACKS = [("a", "b"), ("b", "a"), ("c", "c")]
F4_ATTACKS = [("a", "b"), ("b", "a"), ("a", "a")]


@pytest.fixture
def f1():
    return AF.from_attacks("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "c")])


@pytest.fixture
def f2():
    return AF.from_attacks("abcd", F2_ATTACKS)


@pytest.fixture
def f3():
    return AF.from_attacks("abc", F3_ATTACKS)


@pytest.fixture
def f4():
    return AF.from_attacks("ab", F4_ATTACKS)


@pytest.fixture
def f1_file(tmp_path):
    p = tmp_path / "f1.apx"
    p.write_text(F1_APX)
    return p


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
