import math
import warnings

import numpy as np
import pytest
from hypothesis import strategies as st

from trendfair.model import AgentParams, EconomyState


def random_instance(rng):
    """One draw from the randomized instance family used across the suite.

    a/b log-uniform on [0.01, 60], eta on [0, 0.99], wages on [1, 30],
    trends within +-wage, pot on [1, 20].
    """
    ratio = math.exp(rng.uniform(math.log(0.01), math.log(60)))
    b = rng.uniform(0.1, 2.0)
    agent = AgentParams(a=ratio * b, b=b, eta=rng.uniform(0, 0.99))
    w_i, w_j = rng.uniform(1, 30, size=2)
    econ = EconomyState(
        w_i=w_i,
        w_j=w_j,
        d_i=rng.uniform(-w_i, w_i),
        d_j=rng.uniform(-w_j, w_j),
        t_pot=rng.uniform(1, 20),
    )
    return agent, econ


@pytest.fixture
def instances():
    def make(n, seed):
        rng = np.random.default_rng(seed)
        return [random_instance(rng) for _ in range(n)]

    return make


@pytest.fixture
def reference_agent():
    return AgentParams(a=2.0, b=1.0, eta=0.8)


@st.composite
def agents(draw, allow_selfish=False):
    ratio = draw(st.floats(0.01, 60))
    b = 0.0 if allow_selfish and draw(st.booleans()) else draw(st.floats(0.1, 2.0))
    a = ratio * (b if b > 0 else 1.0)
    return AgentParams(a=a, b=b, eta=draw(st.floats(0, 0.99, allow_subnormal=False)))


@st.composite
def economies(draw):
    w_i = draw(st.floats(1, 30))
    w_j = draw(st.floats(1, 30))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return EconomyState(
            w_i=w_i,
            w_j=w_j,
            d_i=draw(st.floats(-w_i, w_i)),
            d_j=draw(st.floats(-w_j, w_j)),
            t_pot=draw(st.floats(1, 20)),
        )
