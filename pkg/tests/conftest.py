import numpy as np
import pytest

from hugoniot.gas import GasModel, PrimitiveState


@pytest.fixture
def gas():
    return GasModel()


def random_states(rng, n, rho_range=(0.05, 5.0), u_range=(-3.0, 3.0),
                  p_range=(0.05, 5.0)):
    """Batch of valid random primitive states."""
    rho = rng.uniform(*rho_range, n)
    u = rng.uniform(*u_range, n)
    v = rng.uniform(*u_range, n)
    p = rng.uniform(*p_range, n)
    return [PrimitiveState(rho[k], u[k], v[k], p[k]) for k in range(n)]
