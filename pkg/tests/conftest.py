import numpy as np
import pytest

from casimir_rwa import kernels
from casimir_rwa.model import ModelParams


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_state(rng, dim, support=None):
    support = dim if support is None else support
    psi = np.zeros(dim, dtype=np.complex128)
    psi[:support] = rng.normal(size=support) + 1j * rng.normal(size=support)
    return psi / np.linalg.norm(psi)


@pytest.fixture
def params():
    return ModelParams(omega0=1.0, epsilon=0.05, eta=2.3)


BACKENDS = [pytest.param(kernels.python_backend, id="python")]
if kernels.compiled_backend is not None:
    BACKENDS.append(pytest.param(kernels.compiled_backend, id="cython"))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param
