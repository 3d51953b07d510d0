import math

import numpy as np
import pytest

from qmonogamy.measures.entanglement import (
    ckw_residual,
    concurrence_pure,
    concurrence_wootters,
    eof_from_csq,
    eof_pair,
    pair_concurrence,
    three_tangle,
)
from qmonogamy.state.families import StateFactory
from qmonogamy.state.state import (
    DensityMatrix,
    PureState,
    apply_local_unitaries,
    partial_trace,
    random_local_unitaries,
    random_pure_haar,
)


def test_bell_concurrence(bell):
    """Test a Bell state is maximally entangled."""
    assert concurrence_pure(bell, [0]) == pytest.approx(1.0, abs=1e-12)
    assert concurrence_wootters(bell.density()) == pytest.approx(1.0, abs=1e-9)
    assert eof_pair(bell, 0, 1) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize(
    "p,expected",
    [(1.0, 1.0), (0.5, 0.25), (1 / 3, 0.0), (0.2, 0.0)],
    ids=["singlet", "half", "threshold", "separable"],
)
def test_werner_concurrence(werner, p, expected):
    """Test C = max(0, (3p - 1) / 2) for Werner states."""
    assert concurrence_wootters(werner(p)) == pytest.approx(expected, abs=1e-9)


def test_wootters_matches_pure_formula():
    """Test the mixed-state formula agrees with the pure one on pure inputs."""
    psi = random_pure_haar(2, 19)
    expected = concurrence_pure(psi, [0])
    assert concurrence_wootters(psi.density()) == pytest.approx(expected, abs=1e-8)


@pytest.mark.parametrize("seed", [0, 1, 2], ids=["seed0", "seed1", "seed2"])
def test_wootters_local_unitary_invariance(werner, rank2_w, seed):
    """Test the Wootters concurrence is unchanged by single-qubit unitaries."""
    # full-rank inputs keep the matrix square root well conditioned
    states = [werner(0.7)] + [
        DensityMatrix(entries=0.9 * rho.entries + 0.025 * np.eye(4))
        for rho in (
            partial_trace(rank2_w, [0, 1]),
            partial_trace(random_pure_haar(3, seed), [0, 1]),
        )
    ]
    for rho in states:
        rotated = apply_local_unitaries(rho, random_local_unitaries(2, seed + 10))
        assert concurrence_wootters(rotated) == pytest.approx(
            concurrence_wootters(rho), abs=1e-10
        )


def test_concurrence_pure_rejects_mixed(werner):
    """Test the pure-state formula refuses density matrices."""
    with pytest.raises(TypeError):
        concurrence_pure(werner(0.5), [0])


def test_wootters_rejects_wrong_dimension(ghz3):
    """Test the Wootters formula needs two qubits."""
    with pytest.raises(ValueError):
        concurrence_wootters(ghz3.density())


@pytest.mark.parametrize(
    "csq,expected",
    [(0.0, 0.0), (1.0, 1.0), (0.5, 0.60088)],
    ids=["separable", "maximal", "half"],
)
def test_eof_from_csq(csq, expected):
    """Test E_f as a function of the squared concurrence."""
    assert eof_from_csq(csq) == pytest.approx(expected, abs=1e-4)


def test_eof_from_csq_monotone_and_concave():
    """Test E_f increases and is concave in C^2 on a 1e-3 grid."""
    values = np.array([eof_from_csq(x) for x in np.linspace(0.0, 1.0, 1001)])
    assert np.all(np.diff(values) > 0)
    assert np.all(np.diff(values, n=2) <= 1e-12)


def test_eof_from_csq_out_of_range():
    """Test squared concurrences above one raise."""
    with pytest.raises(ValueError):
        eof_from_csq(1.1)


def test_ghz_three_tangle(ghz3):
    """Test GHZ has unit tangle and no pairwise concurrence."""
    assert three_tangle(ghz3) == pytest.approx(1.0, abs=1e-9)
    assert pair_concurrence(ghz3, "A", "B") == pytest.approx(0.0, abs=1e-9)


def test_w_state_tangle():
    """Test the W state has zero tangle and pair concurrence 2/3."""
    psi = StateFactory.create_state("w3", [1, 1, 1])
    assert three_tangle(psi) == pytest.approx(0.0, abs=1e-9)
    assert pair_concurrence(psi, 0, 1) == pytest.approx(2 / 3, abs=1e-9)


def test_product_state_has_no_entanglement(product3):
    """Test a product state has zero concurrence everywhere."""
    assert concurrence_pure(product3, [0]) == pytest.approx(0.0, abs=1e-7)
    assert pair_concurrence(product3, 0, 2) == pytest.approx(0.0, abs=1e-9)
    assert three_tangle(product3) == pytest.approx(0.0, abs=1e-9)


def test_ckw_on_random_states():
    """Test the CKW residual is non-negative and pivot-independent."""
    rng = np.random.default_rng(3)
    for _ in range(50):
        psi = random_pure_haar(3, rng)
        residuals = [ckw_residual(psi, pivot) for pivot in range(3)]
        assert min(residuals) >= -1e-9
        assert max(residuals) - min(residuals) < 1e-8


def test_pair_concurrence_with_logic_qubit(ghz3):
    """Test a two-qubit block is compressed onto one logic qubit."""
    assert pair_concurrence(ghz3, "A", "BC") == pytest.approx(1.0, abs=1e-9)


def test_pair_concurrence_overlap(ghz3):
    """Test overlapping blocks raise."""
    with pytest.raises(ValueError):
        pair_concurrence(ghz3, [0, 1], [1])


def test_pair_concurrence_rank_overflow():
    """Test a block of support rank > 2 cannot be compressed."""
    psi = random_pure_haar(4, 8)
    with pytest.raises(ValueError):
        pair_concurrence(psi, [0], [1, 2])


def test_three_tangle_requires_three_qubits(bell):
    """Test the tangle is only defined on three qubits."""
    with pytest.raises(ValueError):
        three_tangle(bell)


def test_pair_concurrence_mixed_input():
    """Test pair concurrence on an explicit density matrix."""
    psi = PureState.from_amplitudes([1, 0, 0, 0, 0, 0, 0, 1])
    rho = DensityMatrix(entries=psi.density().entries, labels=["x", "y", "z"])
    assert pair_concurrence(rho, "x", "yz") == pytest.approx(1.0, abs=1e-9)
    assert math.isclose(eof_pair(rho, "x", "y"), 0.0, abs_tol=1e-9)
