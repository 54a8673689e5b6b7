import math
import sys

import numpy as np
import pytest

from orlicz.config import DEFAULT, ToleranceConfig
from orlicz.young import (
    ArgScale,
    ExpMinusOne,
    Max,
    PiecewiseLinearConvex,
    Power,
    PowerLog,
    Sum,
    ValScale,
)

SQRT2 = math.sqrt(2.0)


def young_zoo():
    return [
        Power(1),
        Power(2),
        Power(3.5),
        ExpMinusOne(),
        PowerLog(1, 1),
        PowerLog(2, 0.5),
        PiecewiseLinearConvex(((0.0, 0.0), (1.0, 1.0), (2.0, 3.0))),
        ArgScale(2.0, Power(2)),
        ValScale(0.25, Power(2)),
        Sum((Power(1), Power(2))),
        Max((Power(1.5), ExpMinusOne())),
    ]


@pytest.fixture
def cfg() -> ToleranceConfig:
    return DEFAULT


@pytest.fixture
def small_cfg() -> ToleranceConfig:
    return DEFAULT.with_(grid_points=513)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture(params=young_zoo(), ids=str)
def phi(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
