"""
Named state families used throughout the monogamy analysis.

Each family is a pydantic parameter model whose ``build`` method returns the
state. :class:`StateFactory` maps family names to those models and accepts
parameters either by name or positionally (in field order).
"""

import math
from typing import Any, ClassVar, Dict, List, Sequence, Type, Union

import numpy as np
from pydantic.v1 import BaseModel, root_validator, validator

from qmonogamy.constants import NORM_TOL
from qmonogamy.state.state import DensityMatrix, PureState, State
from qmonogamy.utils.log import get_logger

logger = get_logger(__name__)

HALF_PI = math.pi / 2


def _check_range(name: str, value: float, low: float, high: float) -> float:
    if value < low - NORM_TOL or value > high + NORM_TOL:
        raise ValueError(f"{name}={value} outside [{low}, {high}]")
    return float(value)


def _ket(n: int, terms: Dict[str, complex]) -> np.ndarray:
    amplitudes = np.zeros(2**n, dtype=complex)
    for bits, amplitude in terms.items():
        amplitudes[int(bits, 2)] += amplitude
    return amplitudes


class BaseFamilyParams(BaseModel):
    """Base parameters shared by all state families"""

    ANGLES: ClassVar[List[str]] = []
    """Parameters scaled by pi when given in units of pi"""

    class Config:
        extra = "forbid"

    def build(self) -> State:
        raise NotImplementedError


class GeneralizedWParams(BaseFamilyParams):
    """sin(theta)cos(phi)|011> + sin(theta)sin(phi)|101> + cos(theta)|110>"""

    ANGLES: ClassVar[List[str]] = ["theta", "phi"]

    theta: float
    """Polar angle in [0, pi]"""
    phi: float
    """Azimuthal angle in [0, 2 pi]"""

    @validator("theta")
    @classmethod
    def check_theta(cls, v):
        return _check_range("theta", v, 0.0, math.pi)

    @validator("phi")
    @classmethod
    def check_phi(cls, v):
        return _check_range("phi", v, 0.0, 2 * math.pi)

    def build(self) -> PureState:
        s = math.sin(self.theta)
        return PureState.from_amplitudes(
            _ket(
                3,
                {
                    "011": s * math.cos(self.phi),
                    "101": s * math.sin(self.phi),
                    "110": math.cos(self.theta),
                },
            )
        )


class TwoParameterParams(BaseFamilyParams):
    """sqrt(p eps)|000> + sqrt(p(1-eps))|111> + sqrt((1-p)/2)(|101> + |110>)"""

    p: float
    """Weight of the GHZ-like part, in [0, 1]"""
    epsilon: float
    """Split of the GHZ-like part, in [0, 1]"""

    @validator("p", "epsilon")
    @classmethod
    def check_unit(cls, v, field):
        return _check_range(field.name, v, 0.0, 1.0)

    def build(self) -> PureState:
        p, eps = self.p, self.epsilon
        side = math.sqrt(max(0.0, (1 - p) / 2))
        return PureState.from_amplitudes(
            _ket(
                3,
                {
                    "000": math.sqrt(max(0.0, p * eps)),
                    "111": math.sqrt(max(0.0, p * (1 - eps))),
                    "101": side,
                    "110": side,
                },
            )
        )


class AcinParams(BaseFamilyParams):
    """Generalized Schmidt decomposition of three-qubit pure states.

    l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111> with
    l0 = cos t0, l1 = sin t0 cos t1, l2 = sin t0 sin t1 cos t2,
    l3 = sin t0 sin t1 sin t2 cos t3, l4 = sin t0 sin t1 sin t2 sin t3.
    """

    ANGLES: ClassVar[List[str]] = ["theta0", "theta1", "theta2", "theta3", "phi"]

    theta0: float
    theta1: float
    theta2: float
    theta3: float
    phi: float = 0.0
    """Relative phase in [0, pi]"""

    @validator("theta0", "theta1", "theta2", "theta3")
    @classmethod
    def check_angles(cls, v, field):
        return _check_range(field.name, v, 0.0, HALF_PI)

    @validator("phi")
    @classmethod
    def check_phi(cls, v):
        return _check_range("phi", v, 0.0, math.pi)

    def coefficients(self) -> List[float]:
        """The five real Schmidt coefficients l0..l4."""
        s0, s1, s2 = math.sin(self.theta0), math.sin(self.theta1), math.sin(self.theta2)
        return [
            math.cos(self.theta0),
            s0 * math.cos(self.theta1),
            s0 * s1 * math.cos(self.theta2),
            s0 * s1 * s2 * math.cos(self.theta3),
            s0 * s1 * s2 * math.sin(self.theta3),
        ]

    def build(self) -> PureState:
        l0, l1, l2, l3, l4 = self.coefficients()
        return PureState.from_amplitudes(
            _ket(
                3,
                {
                    "000": l0,
                    "100": l1 * np.exp(1j * self.phi),
                    "101": l2,
                    "110": l3,
                    "111": l4,
                },
            )
        )


class GHZParams(BaseFamilyParams):
    """alpha|0...0> + sqrt(1 - alpha^2)|1...1>"""

    qubits: ClassVar[int] = 3

    alpha: float
    """Amplitude of |0...0>, in [0, 1]"""

    @validator("alpha")
    @classmethod
    def check_alpha(cls, v):
        return _check_range("alpha", v, 0.0, 1.0)

    def build(self) -> PureState:
        beta = math.sqrt(max(0.0, 1 - self.alpha**2))
        n = self.qubits
        return PureState.from_amplitudes(_ket(n, {"0" * n: self.alpha, "1" * n: beta}))


class GHZ4Params(GHZParams):
    """Four-qubit GHZ family"""

    qubits: ClassVar[int] = 4


class W3Params(BaseFamilyParams):
    """a|001> + b|010> + c|100>, normalized on construction"""

    a: float
    b: float
    c: float

    @root_validator(skip_on_failure=True)
    @classmethod
    def check_nonzero(cls, values):
        norm = math.sqrt(values["a"] ** 2 + values["b"] ** 2 + values["c"] ** 2)
        if norm == 0:
            raise ValueError("W-class amplitudes a, b, c cannot all be zero")
        if abs(norm - 1) > 1e-6:
            logger.warning(f"Normalizing W-class amplitudes (norm was {norm:.6f})")
        return values

    def build(self) -> PureState:
        return PureState.from_amplitudes(
            _ket(3, {"001": self.a, "010": self.b, "100": self.c})
        )


class ClusterParams(BaseFamilyParams):
    """(|0000> - |0111> - |1010> + |1101>) / 2"""

    def build(self) -> PureState:
        return PureState.from_amplitudes(
            _ket(4, {"0000": 1, "0111": -1, "1010": -1, "1101": 1})
        )


class RankTwoWParams(BaseFamilyParams):
    """Equal mixture of |psi1> = a|100> + b|010> + c|001> and |psi2> = d|000>.

    a = cos t1, b = sin t1 sin t2 cos t3, c = sin t1 sin t2 sin t3,
    d = sin t1 cos t2; the mixture is trace-normalized.
    """

    ANGLES: ClassVar[List[str]] = ["theta1", "theta2", "theta3"]

    theta1: float
    theta2: float
    theta3: float

    def build(self) -> DensityMatrix:
        s1, s2 = math.sin(self.theta1), math.sin(self.theta2)
        a = math.cos(self.theta1)
        b = s1 * s2 * math.cos(self.theta3)
        c = s1 * s2 * math.sin(self.theta3)
        d = s1 * math.cos(self.theta2)
        psi1 = _ket(3, {"100": a, "010": b, "001": c})
        psi2 = _ket(3, {"000": d})
        rho = np.outer(psi1, psi1.conj()) + np.outer(psi2, psi2.conj())
        return DensityMatrix(entries=rho / np.trace(rho).real)


def _cavity_params() -> Type[BaseFamilyParams]:
    from qmonogamy.dynamics.cavity import DampingParams

    return DampingParams


class StateFactory:
    """Factory class to build named states from parameters."""

    FAMILY_MAP: Dict[str, Type[BaseFamilyParams]] = {
        "gen_w": GeneralizedWParams,
        "two_param": TwoParameterParams,
        "acin": AcinParams,
        "ghz3": GHZParams,
        "ghz4": GHZ4Params,
        "w3": W3Params,
        "cluster4": ClusterParams,
        "rank2_w": RankTwoWParams,
    }

    @classmethod
    def families(cls) -> List[str]:
        """Names of every known family, the cavity output state included."""
        return list(cls.FAMILY_MAP) + ["cavity"]

    @classmethod
    def params_class(cls, family: str) -> Type[BaseFamilyParams]:
        """Get the parameter model for a family."""
        if family == "cavity":
            return _cavity_params()
        if family not in cls.FAMILY_MAP:
            raise ValueError(
                f"Unknown state family: {family}. Choose from {cls.families()}"
            )
        return cls.FAMILY_MAP[family]

    @classmethod
    def param_names(cls, family: str) -> List[str]:
        """Parameter names of a family, in positional order."""
        return list(cls.params_class(family).__fields__)

    @classmethod
    def parse_params(
        cls, family: str, params: Union[None, Sequence[float], Dict[str, Any]] = None
    ) -> BaseFamilyParams:
        """Validate positional or named parameters for a family.

        Raises:
            ValueError: On an unknown family, a wrong parameter count or an
                out-of-range value.
        """
        params_class = cls.params_class(family)
        if params is None:
            params = {}
        if not isinstance(params, dict):
            names = list(params_class.__fields__)
            values = list(params)
            if len(values) > len(names):
                raise ValueError(
                    f"{family} takes {len(names)} parameters {names}, got {len(values)}"
                )
            params = dict(zip(names, values))
        return params_class(**params)

    @classmethod
    def create_state(
        cls, family: str, params: Union[None, Sequence[float], Dict[str, Any]] = None
    ) -> State:
        """Build a state of a given family from its parameters.

        .. code-block:: python

            psi = StateFactory.create_state("gen_w", {"theta": math.pi / 4, "phi": 0.3})
            rho = StateFactory.create_state("rank2_w", [0.4 * math.pi] * 3)
        """
        return cls.parse_params(family, params).build()
