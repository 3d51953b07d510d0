"""
Monogamy of squared quantum discord and the tripartite / four-partite
correlation indicators built on it.

Pure three-qubit states use the decomposition

    D^2_{A|BC} - D^2_{A|B} - D^2_{A|C} = T1 + T2
    T1 = E_f^2(A|BC) - E_f^2(AB) - E_f^2(AC)
    T2 = 2 S(A|B) [E_f(AC) - E_f(AB) - S(A|B)]

where every pairwise discord follows from the Koashi-Winter relation.
Mixed three-party states are purified and use the same relation with the
environment as partner. Indicator values on mixed states are never
clipped; negative values carry meaning.
"""

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic.v1 import BaseModel, Field, root_validator

from qmonogamy.constants import CLIP_TOL
from qmonogamy.measures.discord import conditional_entropy, quantum_discord
from qmonogamy.measures.entanglement import concurrence_pure, eof_pair, pair_concurrence
from qmonogamy.state.state import (
    BlockSpec,
    Partition,
    PureState,
    State,
    block_entropy,
    purify,
)
from qmonogamy.utils.log import get_logger

logger = get_logger(__name__)


class MonogamyReport(BaseModel):
    """SQD distribution of one pivot against two partner blocks"""

    pivot: str
    """Label of the pivot block A"""
    partition: Partition
    """Blocks A, B, C on the source register"""
    d2_joint: float
    """D^2_{A|BC}"""
    d2_pairs: List[float]
    """[D^2_{A|B}, D^2_{A|C}]"""
    total: float
    """d2_joint - sum(d2_pairs)"""
    t1: Optional[float] = None
    """Entanglement part; only for pure inputs"""
    t2: Optional[float] = None
    """Conditional-entropy part; only for pure inputs"""
    eof: Dict[str, float] = Field(default_factory=dict)
    """E_f values keyed by block pair, e.g. {'AB': ..., 'AC': ...}"""
    conditional_entropies: Dict[str, float] = Field(default_factory=dict)
    """S(A|B), S(A|C) keyed 'A|B', 'A|C'"""
    entropies: Dict[str, float] = Field(default_factory=dict)
    """Block entropies S(A), S(B), S(C)"""

    @root_validator(skip_on_failure=True)
    @classmethod
    def check_total(cls, values):
        direct = values["d2_joint"] - sum(values["d2_pairs"])
        if abs(values["total"] - direct) > 1e-10:
            raise ValueError(
                f"Distribution total {values['total']} does not match "
                f"D^2 arithmetic {direct}"
            )
        t1, t2 = values.get("t1"), values.get("t2")
        if t1 is None or t2 is None:
            return values
        if abs(t1 + t2 - values["total"]) > 1e-8:
            raise ValueError(
                f"T1 + T2 = {t1 + t2} differs from total {values['total']}"
            )
        return values


class IndicatorSet(BaseModel):
    """Q3/Q4/E3/E4 components keyed by partition, e.g. ``'c1|r1c2r2'``.

    Components are reported as computed; a negative value marks a partition
    on which the correlation is not monogamous.
    """

    q4_1x3: Dict[str, float] = Field(default_factory=dict)
    q4_2x2: Dict[str, float] = Field(default_factory=dict)
    q3: Dict[str, float] = Field(default_factory=dict)
    e4_1x3: Dict[str, float] = Field(default_factory=dict)
    e4_2x2: Dict[str, float] = Field(default_factory=dict)
    e3_1x2: Dict[str, float] = Field(default_factory=dict)

    @root_validator(skip_on_failure=True)
    @classmethod
    def check_finite(cls, values):
        for kind, components in values.items():
            for key, value in components.items():
                if value != value or value in (float("inf"), float("-inf")):
                    raise ValueError(f"Indicator {kind}[{key}] is not finite")
        return values

    def merge(self, other: "IndicatorSet") -> "IndicatorSet":
        """Combine two sets; components of ``other`` win on key clashes."""
        data = self.dict()
        for kind, components in other.dict().items():
            data[kind].update(components)
        return IndicatorSet(**data)

    def flat(self) -> Dict[str, float]:
        """Flatten to column names such as ``q4_1x3_c1_r1c2r2``."""
        columns: Dict[str, float] = {}
        for kind, components in self.dict().items():
            for key, value in components.items():
                columns[indicator_column(kind, key)] = value
        return columns


def indicator_column(kind: str, key: str) -> str:
    """Column name of one component: ('q3', 'c1|c2r2') -> 'q3_c1_c2r2'."""
    return f"{kind}_{key.replace('|', '_')}"


def _clip_measure(name: str, value: float) -> float:
    if -CLIP_TOL <= value < 0:
        return 0.0
    if value < -CLIP_TOL:
        logger.warning(f"{name} is negative beyond rounding noise: {value:.3e}")
    return value


def _tripartition(
    state: State, pivot: BlockSpec, partition: Optional[Partition]
) -> Tuple[List[int], List[int], List[int]]:
    if partition is not None:
        if partition.block_c is None:
            raise ValueError("A tripartite partition needs block_c")
        partition.check_register(state.n)
        return partition.block_a, partition.block_b, partition.block_c
    a = state.block(pivot)
    rest = [q for q in range(state.n) if q not in a]
    if len(rest) != 2:
        raise ValueError(
            f"Pivot {pivot!r} must leave exactly two partner qubits, got {len(rest)}"
        )
    return a, [rest[0]], [rest[1]]


def _require_pure(state: State, what: str) -> PureState:
    if not isinstance(state, PureState):
        raise TypeError(f"{what} requires a PureState")
    return state


def sqd_decomposition(
    psi: PureState, pivot: BlockSpec = 0, partition: Optional[Partition] = None
) -> MonogamyReport:
    """Split the SQD distribution of a pure tripartite state into T1 and T2.

    Blocks may be logic qubits: pass a ``partition`` whose blocks each have
    support rank <= 2 and jointly cover the register.

    Args:
        psi: A pure three-(logic-)qubit state.
        pivot: Pivot qubit A when no partition is given.
        partition: Optional explicit blocks A, B, C.

    Returns:
        MonogamyReport: D^2 terms, T1, T2 and their constituents.
    """
    psi = _require_pure(psi, "sqd_decomposition")
    a, b, c = _tripartition(psi, pivot, partition)
    if sorted(a + b + c) != list(range(psi.n)):
        raise ValueError("Pure-state decomposition needs blocks covering the register")
    s_a, s_b, s_c = (block_entropy(psi, block) for block in (a, b, c))
    e_ab, e_ac = eof_pair(psi, a, b), eof_pair(psi, a, c)
    s_a_b = block_entropy(psi, a + b) - s_b
    s_a_c = block_entropy(psi, a + c) - s_c

    t1 = s_a**2 - e_ab**2 - e_ac**2
    t2 = 2 * s_a_b * (e_ac - e_ab - s_a_b)
    d_ab = _clip_measure("D_{A|B}", e_ac - s_a_b)
    d_ac = _clip_measure("D_{A|C}", e_ab - s_a_c)
    pairs = [d_ab**2, d_ac**2]

    lab = psi.block_label
    return MonogamyReport(
        pivot=lab(a),
        partition=Partition(block_a=a, block_b=b, block_c=c),
        d2_joint=s_a**2,
        d2_pairs=pairs,
        total=s_a**2 - sum(pairs),
        t1=t1,
        t2=t2,
        eof={lab(a) + lab(b): e_ab, lab(a) + lab(c): e_ac},
        conditional_entropies={
            f"{lab(a)}|{lab(b)}": s_a_b,
            f"{lab(a)}|{lab(c)}": s_a_c,
        },
        entropies={lab(a): s_a, lab(b): s_b, lab(c): s_c},
    )


def monogamy_condition(report: MonogamyReport) -> bool:
    """True iff the SQD distribution is non-negative (T1 + T2 >= -1e-9)."""
    if report.t1 is not None and report.t2 is not None:
        return report.t1 + report.t2 >= -CLIP_TOL
    return report.total >= -CLIP_TOL


def q3_pure(psi: PureState, pivot: BlockSpec = 0, route: str = "distribution") -> float:
    """Genuine tripartite quantum correlation Q3 of a pure three-qubit state.

    The ``distribution`` route evaluates D^2_{A|BC} - D^2_{A|B} - D^2_{A|C}
    through quantum_discord; the ``analytic`` route uses
    S(A)^2 - [E_f(AC) - S(A|B)]^2 - [E_f(AB) - S(A|C)]^2.
    Rounding negatives down to -1e-9 are clipped to 0.
    """
    psi = _require_pure(psi, "q3_pure")
    a, b, c = _tripartition(psi, pivot, None)
    if route == "analytic":
        value = sqd_decomposition(psi, pivot).total
    elif route == "distribution":
        d_joint = quantum_discord(psi, a, b + c).discord
        d_ab = quantum_discord(psi, a, b).discord
        d_ac = quantum_discord(psi, a, c).discord
        value = d_joint**2 - d_ab**2 - d_ac**2
    else:
        raise ValueError(f"Unknown Q3 route {route!r}; choose distribution or analytic")
    return _clip_measure("Q3", value)


def q3_mean(psi: PureState) -> float:
    """Mean of Q3 over the three pivots."""
    psi = _require_pure(psi, "q3_mean")
    return sum(q3_pure(psi, pivot) for pivot in range(3)) / 3


def qd_distribution(psi: PureState, pivot: BlockSpec = 0) -> float:
    """Non-squared distribution D_{A|BC} - D_{A|B} - D_{A|C}; may be negative."""
    psi = _require_pure(psi, "qd_distribution")
    a, b, c = _tripartition(psi, pivot, None)
    return (
        quantum_discord(psi, a, b + c).discord
        - quantum_discord(psi, a, b).discord
        - quantum_discord(psi, a, c).discord
    )


def hierarchy(
    psi: PureState, pivot: BlockSpec = 0
) -> Tuple[float, float, float, float]:
    """(D^2_{A|BC}, D^2_{A|B}, D^2_{A|C}, Q3).

    D^2_{A|BC} = D^2_{A|B} + D^2_{A|C} + Q3 holds exactly.
    """
    report = sqd_decomposition(_require_pure(psi, "hierarchy"), pivot)
    d2_ab, d2_ac = report.d2_pairs
    return report.d2_joint, d2_ab, d2_ac, report.d2_joint - d2_ab - d2_ac


def monogamy_score(psi: PureState, pivot: BlockSpec = 0) -> float:
    """Squared-discord monogamy score D^2_{A|BC} - D^2_{A|B} - D^2_{A|C}, unclipped."""
    return sqd_decomposition(_require_pure(psi, "monogamy_score"), pivot).total


def score_difference(
    psi: PureState, reference: PureState, pivot: BlockSpec = 0
) -> float:
    """Score of ``psi`` minus score of ``reference``.

    Against any bipartite-product reference the reference score is 0 and
    the difference equals Q3.
    """
    return monogamy_score(psi, pivot) - monogamy_score(reference, pivot)


def q3_marginal_indicator(
    psi: PureState, pivot: BlockSpec, block_j: BlockSpec, block_k: BlockSpec
) -> float:
    """Q3 indicator of the marginal rho_{ijk} of a larger pure state.

    The qubits outside i, j, k purify the marginal and serve as the
    Koashi-Winter partner: D^2_{i|jk} - D^2_{i|j} - D^2_{i|k}. Not clipped.
    """
    psi = _require_pure(psi, "q3_marginal_indicator")
    i, j, k = psi.block(pivot), psi.block(block_j), psi.block(block_k)
    d_joint = quantum_discord(psi, i, j + k).discord
    d_ij = quantum_discord(psi, i, j).discord
    d_ik = quantum_discord(psi, i, k).discord
    return d_joint**2 - d_ij**2 - d_ik**2


def _purified(state: State) -> PureState:
    if state.n != 3:
        raise ValueError(f"Expected a three-party state, got {state.n} qubits")
    return state if isinstance(state, PureState) else purify(state)


def q3_mixed_indicator(rho: State, pivot: BlockSpec = 0) -> float:
    """Tripartite indicator D^2_{i|jk} - D^2_{i|j} - D^2_{i|k} of a mixed state.

    The state is purified and every discord uses the environment as the
    Koashi-Winter partner where that applies. May be negative.

    Raises:
        ValueError: If a block needed by a discord cannot be compressed.
    """
    psi = _purified(rho)
    (i,) = psi.block(pivot)
    j, k = [q for q in range(3) if q != i]
    return q3_marginal_indicator(psi, [i], [j], [k])


def q3_symmetric_mixed(rho: State) -> float:
    """Mean of q3_mixed_indicator over the three pivots."""
    psi = _purified(rho)
    total = 0.0
    for i in range(3):
        j, k = [q for q in range(3) if q != i]
        total += q3_marginal_indicator(psi, [i], [j], [k])
    return total / 3


def mixed_monogamy_report(rho: State, pivot: BlockSpec = 0) -> MonogamyReport:
    """MonogamyReport of a mixed three-party state (no T1/T2 split)."""
    psi = _purified(rho)
    (i,) = psi.block(pivot)
    j, k = [q for q in range(3) if q != i]
    joint = quantum_discord(psi, [i], [j, k])
    pair_j = quantum_discord(psi, [i], [j])
    pair_k = quantum_discord(psi, [i], [k])
    pairs = [pair_j.discord**2, pair_k.discord**2]
    lab = psi.block_label
    env = lab(list(range(3, psi.n)))
    eof: Dict[str, float] = {}
    if joint.route == "koashi_winter":
        eof[lab([i]) + env] = joint.measured_entropy
    return MonogamyReport(
        pivot=lab([i]),
        partition=Partition(block_a=[i], block_b=[j], block_c=[k]),
        d2_joint=joint.discord**2,
        d2_pairs=pairs,
        total=joint.discord**2 - sum(pairs),
        eof=eof,
        conditional_entropies={
            f"{lab([i])}|{lab([j, k])}": conditional_entropy(psi, [i], [j, k]),
            f"{lab([i])}|{lab([j])}": conditional_entropy(psi, [i], [j]),
            f"{lab([i])}|{lab([k])}": conditional_entropy(psi, [i], [k]),
        },
        entropies={lab([q]): block_entropy(psi, [q]) for q in range(3)},
    )


def _pair_key(psi: PureState, left: Sequence[int], right: Sequence[int]) -> str:
    return f"{psi.block_label(left)}|{psi.block_label(right)}"


def bipartitions_2x2(n: int = 4) -> List[Tuple[List[int], List[int]]]:
    """The three 2|2 splits of four qubits, with the first block holding qubit 0."""
    splits = []
    for partner in range(1, n):
        left = [0, partner]
        splits.append((left, [q for q in range(n) if q not in left]))
    return splits


def q4_components(psi: PureState) -> IndicatorSet:
    """Four-body SQD indicators of a pure four-qubit state.

    1*3 components: D^2_{i|jkl} - sum_j D^2_{i|j} for each pivot.
    2*2 components: S^2(rho_ij) - the four cross-pair D^2, for each split in
    both orientations (the measured block is the right-hand side).
    """
    psi = _require_pure(psi, "q4_components")
    if psi.n != 4:
        raise ValueError(f"q4_components needs four qubits, got {psi.n}")
    d2 = {
        (i, j): quantum_discord(psi, [i], [j]).discord ** 2
        for i, j in itertools.permutations(range(4), 2)
    }
    one_by_three = {}
    for i in range(4):
        rest = [q for q in range(4) if q != i]
        joint = block_entropy(psi, [i]) ** 2
        one_by_three[_pair_key(psi, [i], rest)] = joint - sum(d2[(i, j)] for j in rest)

    two_by_two = {}
    for left, right in bipartitions_2x2():
        for first, second in ((left, right), (right, left)):
            cross = sum(d2[(i, j)] for i in first for j in second)
            joint = block_entropy(psi, first) ** 2
            two_by_two[_pair_key(psi, first, second)] = joint - cross
    return IndicatorSet(q4_1x3=one_by_three, q4_2x2=two_by_two)


def entanglement_indicators(
    psi: PureState, e3_components: Optional[Sequence[Tuple[int, Sequence[int]]]] = None
) -> IndicatorSet:
    """Squared-concurrence counterparts of the Q4/Q3 indicators.

    E4^(1*3) = C^2_{i|jkl} - sum_j C^2_{ij} for each pivot,
    E4^(2*2) = C^2_{ij|kl} minus the four cross-pair C^2 for each split, and
    E3^(1*2) = C^2_{i|(jk)} - C^2_{ij} - C^2_{ik} on three-party marginals,
    with the block jk compressed to a logic qubit.

    Args:
        psi: A pure four-qubit state.
        e3_components: (pivot, block) pairs for E3; defaults to
            (0, (2, 3)) and (1, (2, 3)).

    Raises:
        ValueError: If an E3 block has support rank > 2.
    """
    psi = _require_pure(psi, "entanglement_indicators")
    if psi.n != 4:
        raise ValueError(f"entanglement_indicators needs four qubits, got {psi.n}")
    c2 = {
        pair: pair_concurrence(psi, [pair[0]], [pair[1]]) ** 2
        for pair in itertools.combinations(range(4), 2)
    }

    def pair_sq(i: int, j: int) -> float:
        return c2[(min(i, j), max(i, j))]

    e4_1x3 = {}
    for i in range(4):
        rest = [q for q in range(4) if q != i]
        joint = concurrence_pure(psi, [i]) ** 2
        e4_1x3[_pair_key(psi, [i], rest)] = joint - sum(pair_sq(i, j) for j in rest)

    e4_2x2 = {}
    for left, right in bipartitions_2x2():
        cross = sum(pair_sq(i, j) for i in left for j in right)
        e4_2x2[_pair_key(psi, left, right)] = concurrence_pure(psi, left) ** 2 - cross

    e3 = {}
    for pivot, block in e3_components or [(0, (2, 3)), (1, (2, 3))]:
        block = list(block)
        joint = pair_concurrence(psi, [pivot], block) ** 2
        residual = joint - sum(pair_sq(pivot, j) for j in block)
        e3[_pair_key(psi, [pivot], block)] = residual
    return IndicatorSet(e4_1x3=e4_1x3, e4_2x2=e4_2x2, e3_1x2=e3)
