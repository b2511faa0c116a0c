import random

import pytest

from negabase.pbase import make_base


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=0, help="seed for randomized corpora")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


MINUS_SMALL = [make_base(m, n, "-") for m in range(1, 5) for n in range(1, m + 1)]
PLUS_SMALL = [make_base(m, n, "+") for m in range(3, 6) for n in range(1, m - 1)]


def random_element(rng, base, size=50, dmax=12):
    return base.elem(rng.randint(-size, size), rng.randint(-size, size), rng.randint(1, dmax))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: runs for more than a few seconds")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
