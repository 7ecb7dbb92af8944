import pytest

from stokes2 import DEFAULT_CONFIG, ProblemParams, compute_coefficients, spectral_data

# (criterion, passed, detail) lines recorded by test_acceptance.py
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def cfg():
    return DEFAULT_CONFIG


def coefficients(omega1, q=1.0, U0=1.0):
    p = ProblemParams(omega1, q)
    return compute_coefficients(spectral_data(p), p, U0)
