import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))


@pytest.fixture(scope="session")
def family_census_8():
    """Every family triangulation up to eight tetrahedra, computed once."""
    from norcensus.families.registry import generate_family_census
    return generate_family_census(8, use_cache=False)


@pytest.fixture(scope="session")
def family_census_6():
    from norcensus.families.registry import generate_family_census
    return generate_family_census(6, use_cache=False)


def _registry(records, n):
    return {r.sig: r for r in records if r.size <= n}


@pytest.fixture(scope="session")
def census_report_6(family_census_6):
    from norcensus.census import run_census_report
    return run_census_report(6, registry=_registry(family_census_6, 6))


@pytest.fixture(scope="session")
def census_report_7(family_census_8):
    from norcensus.census import run_census_report
    return run_census_report(7, registry=_registry(family_census_8, 7))


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {text}")
