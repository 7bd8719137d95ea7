import numpy as np
import pytest

from sepscope.povm import cached_povm

T = 0.01


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def povm82():
    return cached_povm(3, 8, 2, T)


@pytest.fixture(scope="session")
def gsic3():
    return cached_povm(3, 1, 9, T)


@pytest.fixture(scope="session")
def mum3():
    return cached_povm(3, 4, 3, T)


@pytest.fixture(scope="session", params=["8-2", "gsic", "mum"])
def povm3(request, povm82, gsic3, mum3):
    return {"8-2": povm82, "gsic": gsic3, "mum": mum3}[request.param]


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hermitian(rng, d):
    z = random_complex(rng, (d, d))
    return (z + z.conj().T) / 2


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log
    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)
