from fractions import Fraction

import pytest
from hypothesis import settings

from ppg.algorithm import build_round1_plan, run_two_round
from ppg.oracles import HiddenInstance, HonestOracle

settings.register_profile("ppg", deadline=None, max_examples=60)
settings.load_profile("ppg")


def F(*xs):
    return tuple(Fraction(x) for x in xs)


@pytest.fixture(scope="session")
def b1_report():
    plan = build_round1_plan(1)
    return run_two_round(HonestOracle(HiddenInstance.random(plan.n, seed=7)), plan=plan)


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record_criterion():
    def record(number: int, ok: bool, detail: str) -> None:
        ACCEPTANCE[number] = (bool(ok), detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
