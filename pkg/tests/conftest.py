import random

import pytest
from hypothesis import settings

from effmod.dvr import RElem

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def rand_relem(rng: random.Random, p: int, deg: int = 3) -> RElem:
    return RElem([rng.randrange(p) for _ in range(deg + 1)], p)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
