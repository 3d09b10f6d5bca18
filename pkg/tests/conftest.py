from __future__ import annotations

import pytest
from hypothesis import settings

from approach_lab.spaces import FiniteSpace

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def W():
    return FiniteSpace.from_matrix(["a", "b", "c"], [[0, 1, 2], ["3/2", 0, 1], ["1/2", "3/2", 0]])


@pytest.fixture
def discrete2():
    return FiniteSpace.from_matrix(["u", "v"], [[0, "inf"], ["inf", 0]])


@pytest.fixture
def glued2():
    return FiniteSpace.from_matrix(["u", "v"], [[0, 0], [0, 0]])
