"""Shared fixtures and the acceptance-criteria reporter.

Heavy objects (eigenforms, the weight-12 partner with many coefficients,
Petersson norms) are session-scoped so the acceptance module and the unit
tests share one computation.
"""

from __future__ import annotations

import pytest

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, name: str, passed: bool, detail: str = "") -> None:
    status = "PASS" if passed else "FAIL"
    line = f"ACCEPTANCE {number:02d} [{status}] {name}"
    if detail:
        line += f" -- {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line, flush=True)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def eigenform_13_2():
    from plusforms.hecke import eigenbasis_plus

    forms = eigenbasis_plus("13/2")
    forms[0].coefficients_upto(900)
    return forms[0]


@pytest.fixture(scope="session")
def delta_form():
    from plusforms.hecke import eigenforms_level1

    return eigenforms_level1(12, prec=100000)[0]


@pytest.fixture(scope="session")
def evaluator_13_2(eigenform_13_2):
    from plusforms.supnorm import FormEvaluator

    return FormEvaluator.from_plus_form(eigenform_13_2, 900)


@pytest.fixture(scope="session")
def norm_f_13_2(eigenform_13_2):
    from plusforms.lfunctions import petersson_norm_f

    return petersson_norm_f(eigenform_13_2, "quadrature", prec=900)


@pytest.fixture(scope="session")
def norm_delta(delta_form):
    from plusforms.lfunctions import petersson_norm_integral

    return petersson_norm_integral(delta_form)


@pytest.fixture(scope="session")
def scan_13_2(evaluator_13_2):
    from plusforms.supnorm import supnorm_scan

    return supnorm_scan(evaluator_13_2, nx=16, ny=32, refine_rounds=2)
