from __future__ import annotations

import numpy as np
import pytest

from brio_riemann.models.domain import FluxParams, State


def st(u: float, v: float) -> State:
    return State(u=u, v=v)


def fp(eps1: float, eps2: float) -> FluxParams:
    return FluxParams(eps1=eps1, eps2=eps2)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def two_shock_data() -> tuple:
    """(1,1) -> (-1,1) with eps2 = 0: intermediate (0, 2), speeds -1 and 1"""
    return st(1.0, 1.0), st(-1.0, 1.0), fp(1.0, 0.0)


@pytest.fixture
def two_rarefaction_data() -> tuple:
    """(0,1) -> (1,1) with eps2 = 0: intermediate (0.5, 0.5)"""
    return st(0.0, 1.0), st(1.0, 1.0), fp(1.0, 0.0)
