"""
Small dense linear-algebra helpers shared by the state and measure modules.

Density matrices are handled as plain ``numpy`` arrays here; the validated
pydantic models live in :mod:`qmonogamy.state.state`.
"""

from typing import List, Sequence, Tuple

import numpy as np

from qmonogamy.constants import ENTROPY_CUTOFF, PSD_TOL


def hermitian_part(matrix: np.ndarray) -> np.ndarray:
    """Return (M + M^dagger) / 2."""
    return 0.5 * (matrix + matrix.conj().T)


def clipped_eigvalsh(matrix: np.ndarray, tol: float = PSD_TOL) -> np.ndarray:
    """Eigenvalues of a Hermitian PSD matrix, ascending, with drift clipped.

    Eigenvalues in [-tol, 0) are set to 0.

    Raises:
        ValueError: If an eigenvalue is more negative than -tol.
    """
    values = np.linalg.eigvalsh(hermitian_part(matrix))
    if values.size and values[0] < -tol:
        raise ValueError(
            f"Matrix is not positive semidefinite: smallest eigenvalue {values[0]:.3e}"
        )
    return np.clip(values, 0.0, None)


def entropy_bits(eigenvalues: np.ndarray) -> float:
    """Shannon entropy in bits of a probability vector (0 log 0 := 0)."""
    p = np.asarray(eigenvalues, dtype=float)
    p = p[p > ENTROPY_CUTOFF]
    return float(-np.sum(p * np.log2(p)))


def batch_entropy_bits(eigenvalues: np.ndarray) -> np.ndarray:
    """Row-wise entropy in bits of a stack of spectra, shape (N, d) -> (N,)."""
    p = np.clip(np.asarray(eigenvalues, dtype=float), 0.0, None)
    safe = np.where(p > ENTROPY_CUTOFF, p, 1.0)
    return -np.sum(np.where(p > ENTROPY_CUTOFF, p * np.log2(safe), 0.0), axis=-1)


def psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix via eigh."""
    values, vectors = np.linalg.eigh(hermitian_part(matrix))
    roots = np.sqrt(np.clip(values, 0.0, None))
    return (vectors * roots) @ vectors.conj().T


def num_qubits(dim: int) -> int:
    """Qubit count of a 2^n dimensional space.

    Raises:
        ValueError: If dim is not a power of two >= 2.
    """
    if dim < 2 or dim & (dim - 1):
        raise ValueError(f"Dimension {dim} is not a power of two")
    return dim.bit_length() - 1


def reduce_ket(ket: np.ndarray, n: int, keep: Sequence[int]) -> np.ndarray:
    """Reduced density matrix of a pure state on ``keep``, in the given order."""
    keep = list(keep)
    rest = [q for q in range(n) if q not in keep]
    tensor = ket.reshape((2,) * n).transpose(keep + rest)
    m = tensor.reshape(2 ** len(keep), 2 ** len(rest))
    return m @ m.conj().T


def reduce_density(matrix: np.ndarray, n: int, keep: Sequence[int]) -> np.ndarray:
    """Partial trace of a density matrix onto ``keep``, in the given order."""
    keep = list(keep)
    rest = [q for q in range(n) if q not in keep]
    dk, dr = 2 ** len(keep), 2 ** len(rest)
    tensor = matrix.reshape((2,) * (2 * n))
    order = keep + rest
    tensor = tensor.transpose(order + [n + q for q in order])
    return np.einsum("ajbj->ab", tensor.reshape(dk, dr, dk, dr))


def permute_density(matrix: np.ndarray, n: int, order: Sequence[int]) -> np.ndarray:
    """Reorder qubits so new position i holds old qubit order[i]."""
    order = list(order)
    tensor = matrix.reshape((2,) * (2 * n)).transpose(order + [n + q for q in order])
    return tensor.reshape(2**n, 2**n)


def block_first_order(n: int, block: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Return (order, rest) that moves ``block`` to the front of the register."""
    rest = [q for q in range(n) if q not in block]
    return list(block) + rest, rest
