import os
import random

import pytest


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator; set TROP_SEED to reproduce a run."""
    return random.Random(int(os.environ.get("TROP_SEED", "20240811")))


def random_fraction(rng: random.Random, span: int = 12, den: int = 4):
    from fractions import Fraction

    return Fraction(rng.randint(-span, span), rng.randint(1, den))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call" or "test_acceptance" not in str(item.fspath):
        return
    label = item.name.removeprefix("test_")
    status = "PASS" if report.passed else "FAIL"
    print(f"\nACCEPTANCE {label}: {status}")
