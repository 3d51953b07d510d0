import math
import pathlib

import numpy as np
import pytest

from qmonogamy.dynamics.cavity import DampingParams, output_state
from qmonogamy.state.families import StateFactory
from qmonogamy.state.state import DensityMatrix, PureState


@pytest.fixture(scope="session")
def seed():
    return 7


@pytest.fixture(scope="session")
def sweeps_path():
    return pathlib.Path(__file__).parent.resolve() / "sweeps"


@pytest.fixture
def bell():
    return PureState.from_amplitudes([1, 0, 0, 1])


@pytest.fixture
def ghz3():
    return StateFactory.create_state("ghz3", [1 / math.sqrt(2)])


@pytest.fixture
def product3():
    # |+> (x) |0> (x) |1>
    plus = np.array([1, 1]) / math.sqrt(2)
    return PureState.from_amplitudes(np.kron(np.kron(plus, [1, 0]), [0, 1]))


@pytest.fixture
def rank2_w():
    return StateFactory.create_state("rank2_w", [0.4 * math.pi] * 3)


@pytest.fixture
def cluster4():
    return StateFactory.create_state("cluster4")


@pytest.fixture
def werner():
    def _werner(p: float) -> DensityMatrix:
        singlet = np.array([0, 1, -1, 0]) / math.sqrt(2)
        mixed = p * np.outer(singlet, singlet) + (1 - p) * np.eye(4) / 4
        return DensityMatrix(entries=mixed)

    return _werner


@pytest.fixture
def cavity():
    def _cavity(kappa_t: float, alpha: float = 1 / math.sqrt(10)) -> PureState:
        return output_state(DampingParams(kappa_t=kappa_t, alpha=alpha))

    return _cavity
