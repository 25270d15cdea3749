import sys

import numpy as np
import pytest

from factorspace import _kernels_py
from factorspace.covering import Covering, IndexSet
from factorspace.state import StateSpace

try:
    from factorspace import _kernels as _kernels_c
except ImportError:  # compiled kernels are optional
    _kernels_c = None

BACKENDS = [_kernels_py] + ([_kernels_c] if _kernels_c is not None else [])


@pytest.fixture(params=BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def binary3():
    return StateSpace.uniform(["1", "2", "3"], 2)


@pytest.fixture
def binary4():
    return StateSpace.uniform(["1", "2", "3", "4"], 2)


def cov(index_set, *members):
    """Covering from label strings, e.g. cov(I, "12", "23"); "" is the empty subset."""
    return Covering.of(index_set, [list(m) for m in members])


def idx(labels):
    return IndexSet(tuple(labels))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
