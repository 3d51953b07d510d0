"""
Pure states, density matrices and partitions over ordered qubit registers.

Qubit 0 is the leftmost ket label and Kronecker products follow register
order. Registers carry one label per qubit (``A, B, C, ...`` by default,
``c1, r1, c2, r2`` for the cavity model); blocks may be addressed either by
index or by label.
"""

import math
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic.v1 import BaseModel, root_validator, validator
from scipy.stats import unitary_group

from qmonogamy.constants import (
    DEFAULT_LABELS,
    HERMITIAN_TOL,
    ISOMETRY_TOL,
    NORM_TOL,
    PSD_TOL,
    RANK_CUTOFF,
    TRACE_TOL,
)
from qmonogamy.utils.linalg import (
    block_first_order,
    clipped_eigvalsh,
    entropy_bits,
    hermitian_part,
    num_qubits,
    permute_density,
    reduce_density,
    reduce_ket,
)
from qmonogamy.utils.log import get_logger

logger = get_logger(__name__)

BlockSpec = Union[int, str, Sequence[Union[int, str]]]
SeedLike = Union[None, int, np.random.SeedSequence, np.random.Generator]


def default_labels(n: int) -> List[str]:
    """Labels for an n-qubit register: A, B, C, ... then q8, q9, ..."""
    return [DEFAULT_LABELS[i] if i < len(DEFAULT_LABELS) else f"q{i}" for i in range(n)]


def _check_labels(labels: List[str], n: int) -> List[str]:
    if not labels:
        return default_labels(n)
    if len(labels) != n:
        raise ValueError(f"Expected {n} register labels, got {len(labels)}")
    if len(set(labels)) != n:
        raise ValueError(f"Register labels must be unique: {labels}")
    return list(labels)


class _Register(BaseModel):
    """Shared register behaviour for pure and mixed states"""

    labels: List[str] = []
    """One label per qubit, in register order"""

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @property
    def dim(self) -> int:
        raise NotImplementedError

    @property
    def n(self) -> int:
        """Number of qubits in the register."""
        return num_qubits(self.dim)

    def index_of(self, label: Union[int, str]) -> int:
        """Resolve a qubit label (or index) to its register index."""
        if isinstance(label, (int, np.integer)):
            if not 0 <= int(label) < self.n:
                raise ValueError(
                    f"Qubit index {label} out of range for {self.n} qubits"
                )
            return int(label)
        if label in self.labels:
            return self.labels.index(label)
        raise ValueError(f"Unknown qubit label {label!r}; register is {self.labels}")

    def block(self, spec: BlockSpec) -> List[int]:
        """Resolve a block spec to a list of register indices.

        Accepts a single index or label, a sequence of them, or a compact
        label string such as ``"BC"`` when every character is a label.

        Raises:
            ValueError: If the block is empty, repeats a qubit or names an
                unknown qubit.
        """
        if isinstance(spec, (int, np.integer)):
            items: Sequence[Union[int, str]] = [int(spec)]
        elif isinstance(spec, str):
            if spec in self.labels:
                items = [spec]
            else:
                items = self._split_compact(spec)
        else:
            items = list(spec)
        indices = [self.index_of(item) for item in items]
        if not indices:
            raise ValueError("Empty qubit block")
        if len(set(indices)) != len(indices):
            raise ValueError(f"Qubit block {spec!r} repeats a qubit")
        return indices

    def _split_compact(self, spec: str) -> List[str]:
        # greedy longest-label match, e.g. "c2r2" -> ["c2", "r2"]
        items, pos = [], 0
        by_length = sorted(self.labels, key=len, reverse=True)
        while pos < len(spec):
            for label in by_length:
                if spec.startswith(label, pos):
                    items.append(label)
                    pos += len(label)
                    break
            else:
                raise ValueError(
                    f"Cannot resolve block {spec!r} against register {self.labels}"
                )
        return items

    def block_label(self, block: Sequence[int]) -> str:
        """Joined label of a block, e.g. [1, 2] -> 'BC'."""
        return "".join(self.labels[q] for q in block)


class PureState(_Register):
    """Normalized state vector on n qubits"""

    amplitudes: np.ndarray
    """Complex amplitudes, length 2^n, unit norm"""

    @validator("amplitudes", pre=True)
    @classmethod
    def validate_amplitudes(cls, v):
        arr = np.array(v, dtype=complex).reshape(-1)
        num_qubits(arr.shape[0])
        norm = float(np.vdot(arr, arr).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"State vector is not normalized: <psi|psi> = {norm:.15f}")
        arr.flags.writeable = False
        return arr

    @root_validator(skip_on_failure=True)
    @classmethod
    def validate_labels(cls, values):
        n = num_qubits(len(values["amplitudes"]))
        values["labels"] = _check_labels(values.get("labels") or [], n)
        return values

    @classmethod
    def from_amplitudes(
        cls, amplitudes: Sequence[complex], labels: Optional[List[str]] = None
    ) -> "PureState":
        """Build a state from (possibly unnormalized) amplitudes.

        Raises:
            ValueError: If the amplitude vector is zero.
        """
        arr = np.array(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(arr)
        if norm == 0:
            raise ValueError("Cannot normalize the zero vector")
        return cls(amplitudes=arr / norm, labels=labels or [])

    @property
    def dim(self) -> int:
        return int(self.amplitudes.shape[0])

    def density(self) -> "DensityMatrix":
        """The projector |psi><psi| as a DensityMatrix."""
        projector = np.outer(self.amplitudes, self.amplitudes.conj())
        return _trusted_density(projector, self.labels)


class DensityMatrix(_Register):
    """Hermitian, PSD, unit-trace operator on n qubits"""

    entries: np.ndarray
    """Matrix entries, shape (2^n, 2^n)"""

    @validator("entries", pre=True)
    @classmethod
    def validate_entries(cls, v):
        arr = np.array(v, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"Density matrix must be square, got shape {arr.shape}")
        num_qubits(arr.shape[0])
        skew = float(np.max(np.abs(arr - arr.conj().T)))
        if skew > HERMITIAN_TOL:
            raise ValueError(
                f"Density matrix is not Hermitian (max deviation {skew:.3e})"
            )
        trace = float(np.trace(arr).real)
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValueError(f"Density matrix trace is {trace:.15f}, expected 1")
        arr = hermitian_part(arr)
        clipped_eigvalsh(arr, PSD_TOL)
        arr.flags.writeable = False
        return arr

    @root_validator(skip_on_failure=True)
    @classmethod
    def validate_labels(cls, values):
        n = num_qubits(len(values["entries"]))
        values["labels"] = _check_labels(values.get("labels") or [], n)
        return values

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    def eigenvalues(self) -> np.ndarray:
        """Clipped spectrum, ascending."""
        return clipped_eigvalsh(self.entries)

    def purity(self) -> float:
        """Tr(rho^2)."""
        return float(np.real(np.sum(self.entries * self.entries.conj())))

    def rank(self, cutoff: float = RANK_CUTOFF) -> int:
        """Numerical rank: eigenvalues above cutoff."""
        return int(np.sum(self.eigenvalues() > cutoff))


State = Union[PureState, DensityMatrix]


def _trusted_density(entries: np.ndarray, labels: List[str]) -> DensityMatrix:
    # results of trace-preserving maps on validated inputs skip re-validation
    arr = hermitian_part(np.asarray(entries, dtype=complex))
    arr.flags.writeable = False
    return DensityMatrix.construct(entries=arr, labels=list(labels))


def _trusted_pure(amplitudes: np.ndarray, labels: List[str]) -> PureState:
    arr = np.asarray(amplitudes, dtype=complex).reshape(-1)
    arr = arr / np.linalg.norm(arr)
    arr.flags.writeable = False
    return PureState.construct(amplitudes=arr, labels=list(labels))


def as_density(state: State) -> DensityMatrix:
    """View any state as a density matrix."""
    return state.density() if isinstance(state, PureState) else state


class Partition(BaseModel):
    """Disjoint qubit blocks used to address a bi- or tripartite cut"""

    block_a: List[int]
    """Measured/pivot block"""
    block_b: List[int]
    """Second block"""
    block_c: Optional[List[int]] = None
    """Optional third block"""

    @root_validator(skip_on_failure=True)
    @classmethod
    def validate_blocks(cls, values):
        blocks = [
            b
            for b in (values["block_a"], values["block_b"], values.get("block_c"))
            if b is not None
        ]
        seen: List[int] = []
        for block in blocks:
            if not block:
                raise ValueError("Partition blocks must be non-empty")
            if any(q < 0 for q in block):
                raise ValueError(f"Negative qubit index in block {block}")
            seen.extend(block)
        if len(seen) != len(set(seen)):
            raise ValueError(f"Partition blocks must be disjoint: {blocks}")
        return values

    @classmethod
    def from_labels(
        cls,
        state: State,
        block_a: BlockSpec,
        block_b: BlockSpec,
        block_c: Optional[BlockSpec] = None,
    ) -> "Partition":
        """Build a partition by resolving labels against a state's register.

        .. code-block:: python

            partition = Partition.from_labels(psi, "c1", "c2r2", "r1")
        """
        return cls(
            block_a=state.block(block_a),
            block_b=state.block(block_b),
            block_c=None if block_c is None else state.block(block_c),
        )

    @property
    def blocks(self) -> List[List[int]]:
        return [b for b in (self.block_a, self.block_b, self.block_c) if b is not None]

    def check_register(self, n: int) -> None:
        """Raise ValueError unless every block lies inside an n-qubit register."""
        for block in self.blocks:
            if max(block) >= n:
                raise ValueError(f"Block {block} is outside a {n}-qubit register")


class LogicQubitMap(BaseModel):
    """Isometry from a multi-qubit block's support onto one logic qubit"""

    block: List[int]
    """Original register indices of the compressed block"""
    label: str
    """Label of the logic qubit (joined block labels)"""
    isometry: np.ndarray
    """Columns span the block's support, shape (2^|block|, 2)"""

    class Config:
        arbitrary_types_allowed = True

    @validator("isometry")
    @classmethod
    def validate_isometry(cls, v):
        v = np.asarray(v, dtype=complex)
        if v.ndim != 2 or v.shape[1] != 2:
            raise ValueError(
                f"Logic-qubit isometry must have two columns, got shape {v.shape}"
            )
        deviation = float(np.max(np.abs(v.conj().T @ v - np.eye(2))))
        if deviation > ISOMETRY_TOL:
            raise ValueError(
                f"Logic-qubit map is not an isometry (deviation {deviation:.3e})"
            )
        return v


def tensor_product(first: State, second: State) -> State:
    """Kronecker product of two states; registers are concatenated.

    Two pure states give a pure state, anything else a density matrix.

    Raises:
        ValueError: If the two registers share a label.
    """
    labels = list(first.labels) + list(second.labels)
    if len(set(labels)) != len(labels):
        raise ValueError(f"Register labels collide in tensor product: {labels}")
    if isinstance(first, PureState) and isinstance(second, PureState):
        return _trusted_pure(np.kron(first.amplitudes, second.amplitudes), labels)
    entries = np.kron(as_density(first).entries, as_density(second).entries)
    return _trusted_density(entries, labels)


def reduced_matrix(state: State, block: Sequence[int]) -> np.ndarray:
    """Reduced density matrix on ``block`` as an array, qubits in the given order."""
    if isinstance(state, PureState):
        return reduce_ket(state.amplitudes, state.n, block)
    return reduce_density(state.entries, state.n, block)


def partial_trace(state: State, keep: BlockSpec) -> DensityMatrix:
    """Trace out every qubit not in ``keep``.

    Kept qubits stay in register order. Pure states are accepted and
    reduced directly from their amplitudes.

    Args:
        state: The state to reduce.
        keep: Indices or labels of the qubits to keep.

    Returns:
        DensityMatrix: The reduced state carrying the kept labels.

    Raises:
        ValueError: If ``keep`` is empty, repeats a qubit or is out of range.
    """
    block = sorted(state.block(keep))
    return _trusted_density(
        reduced_matrix(state, block), [state.labels[q] for q in block]
    )


def von_neumann_entropy(state: State) -> float:
    """S(rho) = -Tr rho log2 rho in bits. Pure states give exactly 0."""
    if isinstance(state, PureState):
        return 0.0
    return entropy_bits(state.eigenvalues())


def block_entropy(state: State, block: Sequence[int]) -> float:
    """Entropy of the reduction of ``state`` onto ``block`` (register indices)."""
    if isinstance(state, PureState) and len(block) == state.n:
        return 0.0
    return entropy_bits(clipped_eigvalsh(reduced_matrix(state, block)))


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2 (1-x), with h(0) = h(1) = 0.

    Raises:
        ValueError: If x lies outside [0, 1] beyond rounding noise.
    """
    if x < -NORM_TOL or x > 1 + NORM_TOL:
        raise ValueError(f"Binary entropy argument {x} outside [0, 1]")
    x = min(max(float(x), 0.0), 1.0)
    return entropy_bits(np.array([x, 1.0 - x]))


def compress_matrix(
    matrix: np.ndarray, n: int, block: Sequence[int]
) -> Tuple[np.ndarray, np.ndarray]:
    """Array-level logic-qubit compression.

    Returns the compressed matrix (logic qubit at the position of
    ``min(block)``) and the isometry whose columns span the block support.
    """
    block = list(block)
    order, rest = block_first_order(n, block)
    db, dr = 2 ** len(block), 2 ** len(rest)
    values, vectors = np.linalg.eigh(hermitian_part(reduce_density(matrix, n, block)))
    rank = int(np.sum(values > RANK_CUTOFF))
    if rank > 2:
        raise ValueError(
            f"Block {block} has support rank {rank} > 2 and cannot be a logic qubit"
        )
    # top two eigenvectors, largest first; pads with an orthogonal vector when rank < 2
    isometry = vectors[:, ::-1][:, :2]
    moved = permute_density(matrix, n, order).reshape(db, dr, db, dr)
    packed = np.einsum("ib,brcs,cj->irjs", isometry.conj().T, moved, isometry)
    packed = packed.reshape(2 * dr, 2 * dr)

    # put the logic qubit back where min(block) sat among the survivors
    anchor = min(block)
    slot = sum(1 for q in rest if q < anchor)
    target = list(range(1, slot + 1)) + [0] + list(range(slot + 1, len(rest) + 1))
    return permute_density(packed, len(rest) + 1, target), isometry


def compress_support(
    state: State, block: BlockSpec
) -> Tuple[DensityMatrix, LogicQubitMap]:
    """Replace a rank <= 2 block by a single logic qubit.

    Entropies and reductions not splitting the block are preserved. A
    single-qubit block is returned unchanged with an identity map.

    .. code-block:: python

        packed, logic = compress_support(psi, "c2r2")
        logic.label  # 'c2r2'

    Raises:
        ValueError: If the block's reduced support has rank > 2.
    """
    rho = as_density(state)
    indices = rho.block(block)
    label = rho.block_label(indices)
    if len(indices) == 1:
        return rho, LogicQubitMap(block=indices, label=label, isometry=np.eye(2))
    packed, isometry = compress_matrix(rho.entries, rho.n, indices)
    anchor = min(indices)
    labels = [
        label if q == anchor else rho.labels[q]
        for q in range(rho.n)
        if q == anchor or q not in indices
    ]
    logger.debug(f"Compressed block {label} onto one logic qubit")
    logic_map = LogicQubitMap(block=indices, label=label, isometry=isometry)
    return _trusted_density(packed, labels), logic_map


def purify(state: State) -> PureState:
    """Purify a density matrix with ceil(log2 rank) environment qubits (at least one).

    The system qubits keep their indices and labels; environment qubits are
    appended as ``E`` (or ``E1, E2, ...``). Tracing them out recovers the
    input.
    """
    rho = as_density(state)
    values, vectors = np.linalg.eigh(rho.entries)
    values, vectors = np.clip(values[::-1], 0.0, None), vectors[:, ::-1]
    rank = max(1, int(np.sum(values > RANK_CUTOFF)))
    env = max(1, math.ceil(math.log2(rank)))
    width = min(2**env, rho.dim)

    amplitudes = np.zeros((rho.dim, 2**env), dtype=complex)
    amplitudes[:, :width] = vectors[:, :width] * np.sqrt(values[:width])
    env_labels = ["E"] if env == 1 else [f"E{i + 1}" for i in range(env)]
    env_labels = [lab if lab not in rho.labels else f"env_{lab}" for lab in env_labels]
    return _trusted_pure(amplitudes.reshape(-1), list(rho.labels) + env_labels)


def random_pure_haar(
    n: int, seed: SeedLike = None, labels: Optional[List[str]] = None
) -> PureState:
    """Haar-random pure state on n qubits from a complex Gaussian vector.

    Args:
        n: Number of qubits.
        seed: Anything ``numpy.random.default_rng`` accepts; a fixed seed
            reproduces the same state.
    """
    if n < 1:
        raise ValueError("A register needs at least one qubit")
    rng = np.random.default_rng(seed)
    dim = 2**n
    vector = (rng.standard_normal(dim) + 1j * rng.standard_normal(dim)) / np.sqrt(2)
    return _trusted_pure(vector, labels or default_labels(n))


def random_local_unitaries(n: int, seed: SeedLike = None) -> List[np.ndarray]:
    """n independent Haar-random single-qubit unitaries."""
    rng = np.random.default_rng(seed)
    return [unitary_group.rvs(2, random_state=rng) for _ in range(n)]


def apply_local_unitaries(state: State, unitaries: Sequence[np.ndarray]) -> State:
    """Apply U_1 (x) ... (x) U_n to a state.

    Raises:
        ValueError: If the number of unitaries does not match the register.
    """
    if len(unitaries) != state.n:
        raise ValueError(f"Expected {state.n} local unitaries, got {len(unitaries)}")
    full = np.array([[1.0 + 0j]])
    for u in unitaries:
        full = np.kron(full, np.asarray(u, dtype=complex))
    if isinstance(state, PureState):
        return _trusted_pure(full @ state.amplitudes, state.labels)
    return _trusted_density(full @ state.entries @ full.conj().T, state.labels)
