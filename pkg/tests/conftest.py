import pytest
from hypothesis import settings
from hypothesis import strategies as st

from virmod.hmod import BModuleSpec
from virmod.scalar import GaussianRational

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def gaussian(draw, nonzero: bool = False):
    re = draw(small_rationals)
    im = draw(small_rationals)
    z = GaussianRational(re, im)
    if nonzero and not z:
        z = GaussianRational(1)
    return z


@pytest.fixture
def hw1():
    return BModuleSpec.highest_weight(1)


@pytest.fixture
def two_dim_spec():
    """L_0 = diag(b + 1, b), L_1 = E_12: a 2-dimensional B-module of order 1."""
    b = GaussianRational(3, 2)
    one, zero = GaussianRational(1), GaussianRational(0)
    return BModuleSpec.from_matrices(2, 1, [[[b + one, zero], [zero, b]], [[zero, one], [zero, zero]]])


ACCEPTANCE: dict = {}


@pytest.fixture
def criterion(request):
    """Record an acceptance criterion's outcome for the terminal summary."""

    def record(number: int, title: str):
        ACCEPTANCE.setdefault(number, [title, True])
        request.node.user_properties.append(("criterion", number))
        return number

    return record


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    for key, value in report.user_properties:
        if key == "criterion" and value in ACCEPTANCE:
            ACCEPTANCE[value][1] = ACCEPTANCE[value][1] and report.passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title}")
