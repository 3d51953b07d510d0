"""
Entanglement measures: concurrence, entanglement of formation and the
three-tangle.

Multi-qubit blocks of rank <= 2 are compressed onto logic qubits before
the two-qubit formulas are applied.
"""

import math
from typing import Sequence

import numpy as np

from qmonogamy.constants import CLIP_TOL, NORM_TOL
from qmonogamy.state.state import (
    BlockSpec,
    DensityMatrix,
    PureState,
    State,
    binary_entropy,
    compress_matrix,
    reduced_matrix,
)
from qmonogamy.utils.linalg import psd_sqrt
from qmonogamy.utils.log import get_logger

logger = get_logger(__name__)

ConcurrenceValue = float
"""Concurrence; non-negative, two-qubit values lie in [0, 1]"""

EofValue = float
"""Entanglement of formation in bits, in [0, 1] for two qubits"""

SIGMA_YY = np.fliplr(np.diag([-1.0, 1.0, 1.0, -1.0]))


def concurrence_pure(state: PureState, block: BlockSpec) -> ConcurrenceValue:
    """C = sqrt(2 (1 - Tr rho_A^2)) across the cut ``block | rest``.

    Raises:
        TypeError: If the state is not pure.
    """
    if not isinstance(state, PureState):
        raise TypeError("concurrence_pure requires a PureState")
    rho_a = reduced_matrix(state, state.block(block))
    purity = float(np.real(np.sum(rho_a * rho_a.conj())))
    return math.sqrt(max(0.0, 2.0 * (1.0 - purity)))


def _wootters(matrix: np.ndarray) -> float:
    # the l_i are the singular values of sqrt(rho) sqrt(rho~)
    root = psd_sqrt(matrix)
    flipped_root = SIGMA_YY @ root.conj() @ SIGMA_YY
    lam = np.linalg.svd(root @ flipped_root, compute_uv=False)
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence_wootters(rho: DensityMatrix) -> ConcurrenceValue:
    """Wootters concurrence of a two-qubit state.

    C = max(0, l1 - l2 - l3 - l4) with l_i the decreasing square roots of
    the eigenvalues of rho (sy x sy) rho* (sy x sy).

    Raises:
        ValueError: If rho is not a two-qubit state.
    """
    if rho.dim != 4:
        raise ValueError(
            f"Wootters concurrence needs a two-qubit state, got dimension {rho.dim}"
        )
    return _wootters(rho.entries)


def eof_from_csq(csq: float) -> EofValue:
    """E_f = h((1 + sqrt(1 - C^2)) / 2) for a two-qubit squared concurrence.

    Raises:
        ValueError: If C^2 is outside [0, 1] beyond rounding noise.
    """
    if csq < -NORM_TOL or csq > 1 + CLIP_TOL:
        raise ValueError(f"Squared concurrence {csq} outside [0, 1]")
    csq = min(max(csq, 0.0), 1.0)
    return binary_entropy((1.0 + math.sqrt(1.0 - csq)) / 2.0)


def pair_matrix(
    state: State, block_i: Sequence[int], block_j: Sequence[int]
) -> np.ndarray:
    """Two-logic-qubit matrix of the reduction onto ``block_i`` then ``block_j``.

    Raises:
        ValueError: If either block has support rank > 2.
    """
    block_i, block_j = list(block_i), list(block_j)
    if set(block_i) & set(block_j):
        raise ValueError(f"Blocks {block_i} and {block_j} overlap")
    matrix = reduced_matrix(state, block_i + block_j)
    n = len(block_i) + len(block_j)
    if len(block_j) > 1:
        matrix, _ = compress_matrix(matrix, n, list(range(len(block_i), n)))
        n = len(block_i) + 1
    if len(block_i) > 1:
        matrix, _ = compress_matrix(matrix, n, list(range(len(block_i))))
    return matrix


def pair_concurrence(
    state: State, block_i: BlockSpec, block_j: BlockSpec
) -> ConcurrenceValue:
    """Concurrence between two blocks of a larger register.

    .. code-block:: python

        pair_concurrence(psi, "c1", "c2r2")
    """
    return _wootters(pair_matrix(state, state.block(block_i), state.block(block_j)))


def eof_pair(state: State, block_i: BlockSpec, block_j: BlockSpec) -> EofValue:
    """Entanglement of formation between two (logic-)qubit blocks."""
    return eof_from_csq(pair_concurrence(state, block_i, block_j) ** 2)


def ckw_residual(state: PureState, pivot: BlockSpec = 0) -> float:
    """C^2_{i|jk} - C^2_{ij} - C^2_{ik} for a three-qubit pure state, unclipped."""
    if not isinstance(state, PureState) or state.n != 3:
        raise ValueError("The CKW residual is defined for three-qubit pure states")
    (i,) = state.block(pivot)
    j, k = [q for q in range(3) if q != i]
    return (
        concurrence_pure(state, [i]) ** 2
        - pair_concurrence(state, [i], [j]) ** 2
        - pair_concurrence(state, [i], [k]) ** 2
    )


def three_tangle(state: PureState, pivot: BlockSpec = 0) -> float:
    """Residual three-tangle tau_3 = C^2_{i|jk} - C^2_{ij} - C^2_{ik}.

    Independent of the pivot for pure three-qubit states.

    Raises:
        RuntimeError: If the residual is below -CLIP_TOL.
    """
    residual = ckw_residual(state, pivot)
    if residual < -CLIP_TOL:
        raise RuntimeError(
            f"Negative three-tangle {residual:.3e}; CKW inequality violated numerically"
        )
    return max(0.0, residual)
