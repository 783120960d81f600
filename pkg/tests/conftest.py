import functools

import numpy as np
import pytest

from symindex.catalog import named_catalog
from symindex.killing import cartan_subspace
from symindex.leaf import leaf_decomposition

CORE_NAMES = [e.name for e in named_catalog() if not e.optional]


@functools.lru_cache(maxsize=None)
def space_of(name):
    from symindex.catalog import get_entry

    return get_entry(name).build()


@functools.lru_cache(maxsize=None)
def cartan_of(name):
    return cartan_subspace(space_of(name))


@functools.lru_cache(maxsize=None)
def leaf_of(name):
    return leaf_decomposition(space_of(name), cartan_of(name))


@pytest.fixture(params=CORE_NAMES)
def catalog_name(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
