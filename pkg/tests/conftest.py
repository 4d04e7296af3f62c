import numpy as np
import pytest

from poincare_chsh import states


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture(params=["phi+", "phi'+", "chi"])
def named_rho(request):
    return request.param, states.density_matrix(states.make_named_state(request.param))


def ket(*amps):
    v = np.array(amps, dtype=complex)
    return v / np.linalg.norm(v)


H, V = ket(1, 0), ket(0, 1)
D, A = ket(1, 1), ket(1, -1)
L, R = ket(1, 1j), ket(1, -1j)
