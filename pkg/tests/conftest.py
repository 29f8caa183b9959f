import pytest

from cartesianforests.randgen import GenSpec, derive_seed, uniform_sequence
from cartesianforests.utils import load_settings

EXAMPLE_PATTERN = (2, 3, 1, 4, 1, 5)
EXAMPLE_TEXT = (5, 7, 3, 6, 3, 7, 2, 8, 2, 4, 3, 3)


def pytest_collection_modifyitems(config, items):
    if load_settings().run_slow:
        return
    skip_slow = pytest.mark.skip(reason="full-size sweep; set CFM_RUN_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def example_pattern():
    return EXAMPLE_PATTERN


@pytest.fixture
def example_text():
    return EXAMPLE_TEXT


@pytest.fixture
def random_instances():
    """
    Returns a factory of reproducible (pattern, text) pairs over small alphabets, alphabet sizes cycling through 2, 4 and the pattern length unless k is given.
    """

    def make(count, max_m=6, max_n=32, seed=7, min_m=1, k=None):
        instances = []
        for i in range(count):
            s = derive_seed(seed, i)
            m = min_m + derive_seed(s, 10) % (max_m - min_m + 1)
            n = m + derive_seed(s, 11) % (max_n - m + 1)
            size = (2, 4, m)[i % 3] if k is None else k
            p = uniform_sequence(GenSpec(m, size, derive_seed(s, 0)))
            t = uniform_sequence(GenSpec(n, size, derive_seed(s, 1)))
            instances.append((p, t))
        return instances

    return make
