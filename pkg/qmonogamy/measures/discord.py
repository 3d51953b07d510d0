"""
Quantum discord D_{A|B} with measurements on block B.

Four routes are available:

- ``numeric``: grid search over rank-1 projective bases on the measured
  (logic-)qubit followed by Nelder-Mead refinement.
- ``xstate``: the sigma_x basis for two-qubit X states meeting the
  optimality criterion, after a local z-phase on B removes any relative
  phase between the two coherences.
- ``koashi_winter``: S(A|B)_measured = E_f(A, partner) where the partner
  purifies AB inside a global pure state.
- ``pure_cut``: D = S(A) when rho_AB is itself pure.

``auto`` picks the first applicable route in the order
pure_cut, xstate, koashi_winter, numeric.
"""

import math
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic.v1 import BaseModel, root_validator, validator
from scipy.optimize import minimize

from qmonogamy.constants import (
    BRANCH_CUTOFF,
    CLIP_TOL,
    GRID_PHI,
    GRID_THETA,
    REFINE_FATOL,
    REFINE_MAXITER,
    REFINE_STARTS,
    REFINE_XATOL,
    XSTATE_CRITERION_SLACK,
    XSTATE_TOL,
)
from qmonogamy.measures.entanglement import eof_pair, pair_matrix
from qmonogamy.state.state import (
    BlockSpec,
    DensityMatrix,
    PureState,
    State,
    block_entropy,
    compress_matrix,
    reduced_matrix,
)
from qmonogamy.utils.linalg import batch_entropy_bits, clipped_eigvalsh, entropy_bits
from qmonogamy.utils.log import get_logger

logger = get_logger(__name__)

X_MASK = np.eye(4, dtype=bool) | np.fliplr(np.eye(4, dtype=bool))


class DiscordRoute(str, Enum):
    AUTO = "auto"
    NUMERIC = "numeric"
    XSTATE = "xstate"
    KOASHI_WINTER = "koashi_winter"
    PURE_CUT = "pure_cut"


class MeasurementSetting(BaseModel):
    """Bloch angles of a rank-1 projective basis {|n>, |n_perp>} on one qubit"""

    theta: float
    """Polar angle in [0, pi]"""
    phi: float
    """Azimuth in [0, 2 pi)"""

    @validator("theta")
    @classmethod
    def check_theta(cls, v):
        if not -1e-12 <= v <= math.pi + 1e-12:
            raise ValueError(f"theta={v} outside [0, pi]")
        return float(v)

    @validator("phi")
    @classmethod
    def check_phi(cls, v):
        if not -1e-12 <= v < 2 * math.pi + 1e-12:
            raise ValueError(f"phi={v} outside [0, 2 pi)")
        return float(v)

    @classmethod
    def canonical(cls, theta: float, phi: float) -> "MeasurementSetting":
        """Fold arbitrary angles onto the canonical range; the basis is unchanged."""
        theta = theta % (2 * math.pi)
        if theta > math.pi:
            theta, phi = 2 * math.pi - theta, phi + math.pi
        phi = phi % (2 * math.pi)
        if phi >= 2 * math.pi - 1e-15:
            phi = 0.0
        return cls(theta=theta, phi=phi)

    def basis(self) -> np.ndarray:
        """Rows are |n> and |n_perp>."""
        up, down = _basis_vectors(np.array([self.theta]), np.array([self.phi]))
        return np.vstack([up, down])


class DiscordResult(BaseModel):
    """Discord, classical correlation and mutual information of one cut, in bits"""

    discord: float
    """D_{A|B} >= 0"""
    classical: float
    """J_{A|B} >= 0"""
    mutual: float
    """I(A:B)"""
    measured_entropy: float
    """Minimized measurement-induced conditional entropy S(A|{E_j^B})"""
    route: DiscordRoute
    optimal_setting: Optional[MeasurementSetting] = None
    """Measurement basis achieving the minimum, when the route produces one"""

    @root_validator(skip_on_failure=True)
    @classmethod
    def check_balance(cls, values):
        if values["discord"] < 0 or values["classical"] < 0:
            raise ValueError("Discord and classical correlation must be non-negative")
        gap = abs(values["discord"] + values["classical"] - values["mutual"])
        if gap > 1e-8:
            raise ValueError(f"D + J differs from I by {gap:.3e}")
        return values

    @property
    def discord_sq(self) -> float:
        return self.discord**2


def _clip(name: str, value: float) -> float:
    if value < -CLIP_TOL:
        raise RuntimeError(f"{name} is negative beyond rounding noise: {value:.3e}")
    return max(0.0, value)


def _basis_vectors(theta: np.ndarray, phi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    c, s, e = np.cos(theta / 2), np.sin(theta / 2), np.exp(1j * phi)
    up = np.stack([c, e * s], axis=-1)
    down = np.stack([-np.conj(e) * s, c], axis=-1)
    return up, down


def _branch_entropy(rho4: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    sigma = np.einsum("nb,abcd,nd->nac", vectors.conj(), rho4, vectors)
    p = np.real(np.trace(sigma, axis1=1, axis2=2))
    keep = p > BRANCH_CUTOFF
    safe = np.where(keep, p, 1.0)
    spectra = np.linalg.eigvalsh(sigma / safe[:, None, None])
    return np.where(keep, p * batch_entropy_bits(spectra), 0.0)


def measured_entropy_at(rho4: np.ndarray, theta, phi) -> np.ndarray:
    """Sum_j p_j S(A | n_j) for bases at the given angles (vectorized).

    ``rho4`` is the AB matrix reshaped to (dA, 2, dA, 2) with B the
    measured qubit.
    """
    theta, phi = np.atleast_1d(theta), np.atleast_1d(phi)
    up, down = _basis_vectors(theta, phi)
    return _branch_entropy(rho4, up) + _branch_entropy(rho4, down)


def _grid() -> Tuple[np.ndarray, np.ndarray]:
    thetas = np.linspace(0.0, math.pi, GRID_THETA)
    phis = 2 * math.pi * np.arange(GRID_PHI) / GRID_PHI
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    return tt.reshape(-1), pp.reshape(-1)


def _minimize(rho4: np.ndarray) -> Tuple[float, MeasurementSetting]:
    thetas, phis = _grid()
    values = measured_entropy_at(rho4, thetas, phis)
    # value first, then angles, so ties resolve the same way every run
    order = np.lexsort((phis, thetas, values))

    candidates: List[Tuple[float, float, float]] = []
    step_theta, step_phi = math.pi / (GRID_THETA - 1), 2 * math.pi / GRID_PHI
    for idx in order[:REFINE_STARTS]:
        t0, p0 = thetas[idx], phis[idx]
        candidates.append((float(values[idx]), t0, p0))
        simplex = np.array(
            [[t0, p0], [t0 + step_theta / 2, p0], [t0, p0 + step_phi / 2]]
        )
        result = minimize(
            lambda x: float(measured_entropy_at(rho4, x[0], x[1])[0]),
            x0=[t0, p0],
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "xatol": REFINE_XATOL,
                "fatol": REFINE_FATOL,
                "maxiter": REFINE_MAXITER,
            },
        )
        candidates.append((float(result.fun), float(result.x[0]), float(result.x[1])))

    settings = []
    for value, theta, phi in candidates:
        setting = MeasurementSetting.canonical(theta, phi)
        settings.append((value, setting.theta, setting.phi, setting))
    best = min(settings, key=lambda item: item[:3])
    return max(0.0, best[0]), best[3]


def _measured_tensor(state: State, a: Sequence[int], b: Sequence[int]) -> np.ndarray:
    """AB matrix with B compressed to one qubit, reshaped to (dA, 2, dA, 2)."""
    a, b = list(a), list(b)
    matrix = reduced_matrix(state, a + b)
    if len(b) > 1:
        n = len(a) + len(b)
        matrix, _ = compress_matrix(matrix, n, list(range(len(a), n)))
    da = 2 ** len(a)
    return matrix.reshape(da, 2, da, 2)


def _disjoint(a: Sequence[int], b: Sequence[int]) -> None:
    if set(a) & set(b):
        raise ValueError(f"Blocks {list(a)} and {list(b)} overlap")


def conditional_entropy(state: State, a: BlockSpec, b: BlockSpec) -> float:
    """S(A|B) = S(AB) - S(B); may be negative."""
    a_idx, b_idx = state.block(a), state.block(b)
    _disjoint(a_idx, b_idx)
    return block_entropy(state, a_idx + b_idx) - block_entropy(state, b_idx)


def mutual_information(state: State, a: BlockSpec, b: BlockSpec) -> float:
    """I(A:B) = S(A) + S(B) - S(AB)."""
    a_idx, b_idx = state.block(a), state.block(b)
    _disjoint(a_idx, b_idx)
    return (
        block_entropy(state, a_idx)
        + block_entropy(state, b_idx)
        - block_entropy(state, a_idx + b_idx)
    )


def min_measured_conditional_entropy(
    state: State, a: BlockSpec, b: BlockSpec
) -> Tuple[float, MeasurementSetting]:
    """Minimize sum_j p_j S(rho_A|j) over projective bases on block B.

    A 24 x 48 grid over (theta, phi) is refined with Nelder-Mead from the
    best three grid points. Branches with p_j < 1e-12 contribute nothing.

    Args:
        state: State holding blocks A and B.
        a: The unmeasured block.
        b: The measured block; a qubit or a block of support rank <= 2.

    Returns:
        Tuple[float, MeasurementSetting]: The minimum (>= 0) and the basis
        achieving it.

    Raises:
        ValueError: If block B has support rank > 2.
    """
    a_idx, b_idx = state.block(a), state.block(b)
    _disjoint(a_idx, b_idx)
    return _minimize(_measured_tensor(state, a_idx, b_idx))


def is_xstate(rho: DensityMatrix) -> bool:
    """True if every entry off the diagonal and anti-diagonal is below 1e-10."""
    matrix = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho)
    if matrix.shape != (4, 4):
        return False
    return bool(np.max(np.abs(matrix[~X_MASK])) <= XSTATE_TOL)


def xstate_criterion(rho: DensityMatrix) -> bool:
    """Whether the sigma_x measurement is optimal for a two-qubit X state.

    True iff a03 conj(a12) is real, |a12 + a03| >= |a12 - a03| and
    |sqrt(a00 a33) - sqrt(a11 a22)| <= |a12| + |a03|. A complex relative
    phase between the coherences rotates the optimal basis away from
    sigma_x, so such states fail.

    Raises:
        ValueError: If rho is not in X form.
    """
    matrix = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho)
    if not is_xstate(matrix):
        raise ValueError("xstate_criterion requires a two-qubit X-form state")
    return _criterion(matrix)


def _criterion(matrix: np.ndarray) -> bool:
    a = matrix
    a00, a11, a22, a33 = (max(0.0, float(np.real(a[i, i]))) for i in range(4))
    a03, a12 = a[0, 3], a[1, 2]
    if abs(np.imag(a03 * np.conj(a12))) > XSTATE_TOL:
        return False
    phase_ok = abs(a12 + a03) >= abs(a12 - a03) - XSTATE_CRITERION_SLACK
    gap = abs(math.sqrt(a00 * a33) - math.sqrt(a11 * a22))
    return bool(phase_ok and gap <= abs(a12) + abs(a03) + XSTATE_CRITERION_SLACK)


def xstate_azimuth(matrix: np.ndarray) -> Optional[float]:
    """Azimuth of the equatorial basis on B that is optimal for an X state.

    diag(1, e^{iv}) on B multiplies a03 by e^{-iv} and a12 by e^{iv}; with
    v = arg(a03 conj(a12)) / 2 both coherences share one phase and the
    sigma_x criterion applies to the rotated state. Measuring that state
    in sigma_x equals measuring the input at azimuth -v.

    Returns:
        Optional[float]: The azimuth in [0, 2 pi), or None when the rotated
        state fails the criterion.
    """
    v = float(np.angle(matrix[0, 3] * np.conj(matrix[1, 2]))) / 2
    gauge = np.kron(np.eye(2), np.diag([1.0, np.exp(1j * v)]))
    if not _criterion(gauge @ matrix @ gauge.conj().T):
        return None
    return MeasurementSetting.canonical(math.pi / 2, -v).phi


def _assemble(
    s_a: float,
    s_b: float,
    s_ab: float,
    measured: float,
    route: DiscordRoute,
    setting=None,
) -> DiscordResult:
    mutual = max(0.0, s_a + s_b - s_ab)
    discord = _clip("Discord", measured - (s_ab - s_b))
    classical = _clip("Classical correlation", mutual - discord)
    return DiscordResult(
        discord=discord,
        classical=classical,
        mutual=discord + classical,
        measured_entropy=measured,
        route=route,
        optimal_setting=setting,
    )


def xstate_discord(rho: DensityMatrix) -> DiscordResult:
    """Discord D_{A|B} of a two-qubit X state using the sigma_x basis on B.

    Raises:
        ValueError: If rho is not in X form or the criterion fails.
    """
    if rho.dim != 4 or not xstate_criterion(rho):
        raise ValueError("sigma_x optimality criterion does not hold for this state")
    return _xstate_route(rho, [0], [1])


def _xstate_route(
    state: State, a: List[int], b: List[int], phi: float = 0.0
) -> DiscordResult:
    rho4 = pair_matrix(state, a, b).reshape(2, 2, 2, 2)
    measured = float(measured_entropy_at(rho4, math.pi / 2, phi)[0])
    return _assemble(
        block_entropy(state, a),
        block_entropy(state, b),
        block_entropy(state, a + b),
        max(0.0, measured),
        DiscordRoute.XSTATE,
        MeasurementSetting(theta=math.pi / 2, phi=phi),
    )


def discord_koashi_winter(
    global_state: PureState,
    a: BlockSpec,
    bc: BlockSpec,
    partner: Optional[BlockSpec] = None,
) -> DiscordResult:
    """D_{a|bc} = E_f(a, partner) - S(a|bc) inside a global pure state.

    The partner defaults to every qubit outside ``a`` and ``bc``. Mixed
    states must be purified first so that the partner is the environment.

    .. code-block:: python

        psi = purify(rho_abc)
        discord_koashi_winter(psi, "A", "BC", "E")

    Raises:
        TypeError: If the global state is not pure.
        ValueError: If the blocks do not cover the register or E_f is not
            computable on (a, partner).
    """
    if not isinstance(global_state, PureState):
        raise TypeError("The Koashi-Winter route requires a global pure state")
    a_idx, bc_idx = global_state.block(a), global_state.block(bc)
    _disjoint(a_idx, bc_idx)
    rest = [q for q in range(global_state.n) if q not in a_idx + bc_idx]
    partner_idx = rest if partner is None else global_state.block(partner)
    if sorted(a_idx + bc_idx + partner_idx) != list(range(global_state.n)):
        raise ValueError("Blocks a, bc and partner must partition the register")
    if not partner_idx:
        raise ValueError("The Koashi-Winter route needs a non-empty partner block")
    measured = eof_pair(global_state, a_idx, partner_idx)
    return _assemble(
        block_entropy(global_state, a_idx),
        block_entropy(global_state, bc_idx),
        block_entropy(global_state, a_idx + bc_idx),
        measured,
        DiscordRoute.KOASHI_WINTER,
    )


def _source(state: State, global_state: Optional[PureState]) -> State:
    if global_state is None:
        return state
    if list(global_state.labels[: state.n]) != list(state.labels):
        raise ValueError(
            f"Global register {global_state.labels} does not extend "
            f"the state register {state.labels}"
        )
    return global_state


def quantum_discord(
    state: State,
    a: BlockSpec,
    b: BlockSpec,
    route: str = "auto",
    global_state: Optional[PureState] = None,
) -> DiscordResult:
    """Quantum discord D_{A|B} with the measurement on block B.

    D_{A|B} = S(B) - S(AB) + min sum_j p_j S(rho_A|j). When ``global_state``
    is given (or ``state`` itself is pure) the Koashi-Winter route becomes
    available, using the qubits outside A and B as the partner.

    Args:
        state: The state holding blocks A and B.
        a: The unmeasured block.
        b: The measured block.
        route: One of auto, numeric, xstate, koashi_winter, pure_cut.
        global_state: Optional pure state whose leading qubits are ``state``.

    Returns:
        DiscordResult: Discord, classical correlation and mutual information.

    Raises:
        ValueError: If the route does not apply to the input.
    """
    route = DiscordRoute(route)
    source = _source(state, global_state)
    a_idx, b_idx = source.block(a), source.block(b)
    _disjoint(a_idx, b_idx)

    if route == DiscordRoute.AUTO:
        return _auto(source, a_idx, b_idx)
    if route == DiscordRoute.PURE_CUT:
        return _pure_cut_route(source, a_idx, b_idx)
    if route == DiscordRoute.XSTATE:
        if len(a_idx) != 1 or len(b_idx) != 1:
            raise ValueError("The xstate route needs single-qubit blocks")
        phi = _xstate_phi(reduced_matrix(source, a_idx + b_idx))
        if phi is None:
            raise ValueError(
                "The xstate route needs an X state meeting the sigma_x criterion"
            )
        return _xstate_route(source, a_idx, b_idx, phi)
    if route == DiscordRoute.KOASHI_WINTER:
        if not isinstance(source, PureState):
            raise ValueError("The koashi_winter route needs a global pure state")
        return discord_koashi_winter(source, a_idx, b_idx)
    return _numeric_route(source, a_idx, b_idx)


def _xstate_phi(matrix: np.ndarray) -> Optional[float]:
    if not is_xstate(matrix):
        return None
    return xstate_azimuth(matrix)


def _pure_cut_route(state: State, a: List[int], b: List[int]) -> DiscordResult:
    matrix = reduced_matrix(state, a + b)
    impurity = 1.0 - float(np.real(np.sum(matrix * matrix.conj())))
    if impurity > 1e-10:
        raise ValueError("The pure_cut route needs rho_AB to be pure")
    s_a = entropy_bits(clipped_eigvalsh(reduced_matrix(state, a)))
    return DiscordResult(
        discord=s_a,
        classical=s_a,
        mutual=2 * s_a,
        measured_entropy=0.0,
        route=DiscordRoute.PURE_CUT,
    )


def _numeric_route(state: State, a: List[int], b: List[int]) -> DiscordResult:
    measured, setting = _minimize(_measured_tensor(state, a, b))
    return _assemble(
        block_entropy(state, a),
        block_entropy(state, b),
        block_entropy(state, a + b),
        measured,
        DiscordRoute.NUMERIC,
        setting,
    )


def _auto(state: State, a: List[int], b: List[int]) -> DiscordResult:
    try:
        return _pure_cut_route(state, a, b)
    except ValueError:
        pass
    if len(a) == 1 and len(b) == 1:
        phi = _xstate_phi(reduced_matrix(state, a + b))
        if phi is not None:
            return _xstate_route(state, a, b, phi)
    if isinstance(state, PureState) and len(a) + len(b) < state.n:
        try:
            return discord_koashi_winter(state, a, b)
        except ValueError as exc:
            logger.debug(
                f"Koashi-Winter route unavailable ({exc}); falling back to numeric"
            )
    return _numeric_route(state, a, b)


def classical_correlation(
    state: State,
    a: BlockSpec,
    b: BlockSpec,
    route: str = "auto",
    global_state: Optional[PureState] = None,
) -> float:
    """J_{A|B}, the classical correlation accompanying quantum_discord."""
    result = quantum_discord(state, a, b, route=route, global_state=global_state)
    return result.classical
