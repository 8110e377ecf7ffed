import random

import pytest

from fcarefute import FormalContext
from fcarefute.harness import builtin_case, random_corpus


@pytest.fixture
def cex1():
    return builtin_case("cex1")[0]


@pytest.fixture
def cex2():
    return builtin_case("cex2")[0]


@pytest.fixture
def cex3():
    return builtin_case("cex3")[0]


@pytest.fixture
def one_by_one():
    return FormalContext(("0",), ("0",), (1,))


@pytest.fixture
def full_2x2():
    return FormalContext(("o1", "o2"), ("a", "b"), (3, 3))


@pytest.fixture(scope="session")
def small_corpus():
    return random_corpus(seed=7, per_density=60)


def random_ctx(seed, max_objects=6, max_attributes=5, density=None):
    rng = random.Random(seed)
    n = rng.randint(1, max_objects)
    m = rng.randint(1, max_attributes)
    p = rng.choice([0.2, 0.4, 0.6]) if density is None else density
    grid = [[rng.random() < p for _ in range(m)] for _ in range(n)]
    return FormalContext.from_matrix([f"o{i}" for i in range(n)], [f"a{j}" for j in range(m)], grid)
