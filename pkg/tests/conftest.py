"""Shared fixtures and the acceptance-suite report lines."""

import pytest

from colorharmony import ColorDistanceTable, default_partition


@pytest.fixture(scope="session")
def partition():
    return default_partition()


@pytest.fixture(scope="session")
def table(partition):
    return ColorDistanceTable.from_partition(partition)


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        status = "PASS" if report.passed else "FAIL"
        print(f"\n[{status}] {name}")
