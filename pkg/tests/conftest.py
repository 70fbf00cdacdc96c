# coding: utf-8
import math

import pytest

from ..kernel.qkernel import DeformationParams

# (p, theta) points of the relation-suite acceptance grid
PARAMETER_GRID = [(p, theta) for p in (0.3, 0.7, 1.5) for theta in (0., math.pi / 7, math.pi / 2)]


@pytest.fixture
def params():
    return DeformationParams(p=0.7, theta=math.pi / 7)


@pytest.fixture
def exact_params():
    return DeformationParams(p=0.5, theta=math.pi / 7, exact=True)


@pytest.fixture
def classical_params():
    return DeformationParams(p=1., classical_limit=True)
