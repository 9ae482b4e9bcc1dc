from __future__ import annotations

from pathlib import Path

import pytest

from susmod import load, parse_binding

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "corpus"
FIXTURES = Path(__file__).resolve().parent / "fixtures"

COVID = CORPUS / "covid" / "covid.susm"
VA_PATTERN = CORPUS / "fairness" / "violation_anticipation.susp"
VA_BINDING = CORPUS / "covid" / "violation_anticipation.bind"
FAIRNESS = CORPUS / "fairness" / "fairness.susc"
CIRCULAR = CORPUS / "circular" / "circular.susc"

_acceptance: dict[str, str] = {}


@pytest.fixture(scope="session")
def covid():
    return load(COVID)


@pytest.fixture(scope="session")
def va_pattern():
    return load(VA_PATTERN)


@pytest.fixture(scope="session")
def va_binding():
    return parse_binding(VA_BINDING.read_text(encoding="utf-8"), VA_BINDING)


@pytest.fixture(scope="session")
def fairness():
    return load(FAIRNESS)


@pytest.fixture(scope="session")
def circular():
    return load(CIRCULAR)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    if "test_acceptance.py::" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    _acceptance[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance, key=lambda n: int(n.split("_")[1])):
        terminalreporter.write_line(f"{_acceptance[name]}  {name}")
