"""
Parameter sweeps over named state families.

A :class:`SweepSpec` names a family, fixed parameters, one or more grid
axes and the indicators to evaluate; :func:`run_sweep` turns it into a
rectangular :class:`SweepTable`.
"""

import math
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import yaml
from pydantic.v1 import BaseModel, Field, root_validator, validator

from qmonogamy.dynamics.cavity import cavity_indicator_names, cavity_indicators
from qmonogamy.measures.entanglement import ckw_residual
from qmonogamy.monogamy.indicators import (
    monogamy_score,
    q3_mean,
    q3_mixed_indicator,
    q3_pure,
    q3_symmetric_mixed,
    qd_distribution,
    sqd_decomposition,
)
from qmonogamy.state.families import StateFactory
from qmonogamy.state.state import State
from qmonogamy.utils.log import get_logger

logger = get_logger(__name__)


class SweepAxis(BaseModel):
    """One grid axis: an inclusive range given by step or by point count"""

    name: str
    """Family parameter swept along this axis"""
    start: float
    stop: float
    step: Optional[float] = None
    num: Optional[int] = None
    times_pi: bool = False
    """Interpret start, stop and step in units of pi"""

    @root_validator(skip_on_failure=True)
    @classmethod
    def check_grid(cls, values):
        step, num = values.get("step"), values.get("num")
        if (step is None) == (num is None):
            raise ValueError(f"Axis {values['name']} needs exactly one of step or num")
        if step is not None and step <= 0:
            raise ValueError(f"Axis {values['name']} step must be positive")
        if num is not None and num < 1:
            raise ValueError(f"Axis {values['name']} is empty")
        if values["stop"] < values["start"]:
            raise ValueError(f"Axis {values['name']} stops before it starts")
        return values

    def values(self) -> np.ndarray:
        """Grid points, endpoints included."""
        if self.num is not None:
            grid = np.linspace(self.start, self.stop, self.num)
        else:
            count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
            grid = self.start + self.step * np.arange(count)
        return grid * math.pi if self.times_pi else grid


class SweepSpec(BaseModel):
    """A named sweep: family, fixed parameters, axes and indicators"""

    version: str = Field(default="0.1.0", const=True)
    name: str = "sweep"
    family: str
    params: Dict[str, float] = {}
    """Fixed family parameters"""
    pi_units: List[str] = []
    """Fixed parameters given in units of pi"""
    axes: List[SweepAxis]
    indicators: List[str]
    max_points: Optional[int] = None
    """Evaluate evenly spaced grid points when the grid is larger than this"""

    @validator("family")
    @classmethod
    def check_family(cls, v):
        StateFactory.params_class(v)
        return v

    @validator("indicators")
    @classmethod
    def check_indicators(cls, v):
        if not v:
            raise ValueError("A sweep needs at least one indicator")
        for name in v:
            IndicatorRegistry.group_of(name)
        return v

    @root_validator(skip_on_failure=True)
    @classmethod
    def check_axes(cls, values):
        names = [axis.name for axis in values["axes"]]
        if not names:
            raise ValueError("A sweep needs at least one axis")
        if len(set(names)) != len(names):
            raise ValueError(f"Duplicate sweep axes: {names}")
        allowed = StateFactory.param_names(values["family"])
        for name in names + list(values["params"]):
            if name not in allowed:
                raise ValueError(
                    f"{name} is not a parameter of {values['family']}; "
                    f"expected one of {allowed}"
                )
        overlap = set(names) & set(values["params"])
        if overlap:
            raise ValueError(f"Parameters {sorted(overlap)} are both fixed and swept")
        return values

    @classmethod
    def from_yaml(cls, file_path: str) -> "SweepSpec":
        """Create a SweepSpec from a YAML file.

        .. code-block:: python

            spec = SweepSpec.from_yaml("sweeps/fig5.yaml")
        """
        try:
            fp = Path(file_path).resolve()
        except OSError as e:
            raise ValueError(f"Invalid file path: {file_path}") from e

        if not fp.exists():
            raise FileNotFoundError(f"Sweep file {file_path} does not exist")

        with open(fp, "r") as f:
            yaml_data = yaml.safe_load(f)
            return cls(**yaml_data)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SweepSpec":
        """Create a SweepSpec from a dictionary."""
        return cls(**data)

    def fixed_params(self) -> Dict[str, float]:
        """Fixed parameters with pi units resolved."""
        return {
            k: v * math.pi if k in self.pi_units else v for k, v in self.params.items()
        }


class SweepTable(BaseModel):
    """Rectangular grid of indicator values, one row per evaluated point"""

    family: str
    axis_names: List[str]
    indicator_names: List[str]
    points: np.ndarray
    """Axis values, shape (rows, len(axis_names))"""
    values: np.ndarray
    """Indicator values, shape (rows, len(indicator_names))"""
    subsampled: bool = False

    class Config:
        arbitrary_types_allowed = True

    @root_validator(skip_on_failure=True)
    @classmethod
    def check_shape(cls, values):
        points, data = values["points"], values["values"]
        if points.shape != (len(data), len(values["axis_names"])):
            raise ValueError(f"Point array has shape {points.shape}")
        if data.shape[1:] != (len(values["indicator_names"]),):
            raise ValueError(f"Value array has shape {data.shape}")
        if not np.all(np.isfinite(data)):
            raise ValueError("Sweep table has missing or non-finite cells")
        return values

    def __len__(self) -> int:
        return len(self.values)

    def column(self, name: str) -> np.ndarray:
        """Values of one indicator or one axis."""
        if name in self.indicator_names:
            return self.values[:, self.indicator_names.index(name)]
        if name in self.axis_names:
            return self.points[:, self.axis_names.index(name)]
        raise ValueError(f"No column named {name}")

    def select(self, indicators: Sequence[str]) -> "SweepTable":
        """A table restricted to some indicators."""
        cols = [self.indicator_names.index(name) for name in indicators]
        return SweepTable(
            family=self.family,
            axis_names=self.axis_names,
            indicator_names=list(indicators),
            points=self.points,
            values=self.values[:, cols],
            subsampled=self.subsampled,
        )

    def series(
        self, indicator: str, along: str, fixed: Optional[Dict[str, float]] = None
    ) -> Tuple[np.ndarray, np.ndarray]:
        """(x, y) along one axis with the other axes held at ``fixed``.

        Fixed values snap to the nearest grid value.
        """
        mask = np.ones(len(self), dtype=bool)
        for name, target in (fixed or {}).items():
            axis = self.column(name)
            nearest = axis[np.argmin(np.abs(axis - target))]
            mask &= np.isclose(axis, nearest)
        x = self.column(along)[mask]
        y = self.column(indicator)[mask]
        order = np.argsort(x, kind="stable")
        return x[order], y[order]

    def summary(self) -> List[List[Any]]:
        """[indicator, min, max] rows."""
        return [
            [name, float(np.min(self.values[:, i])), float(np.max(self.values[:, i]))]
            for i, name in enumerate(self.indicator_names)
        ]


class IndicatorRegistry:
    """Maps indicator names to their evaluators."""

    TRIPARTITE_MAP: Dict[str, Callable[[State], float]] = {
        "qd_dist": lambda psi: qd_distribution(psi, 0),
        "sqd_dist": lambda psi: monogamy_score(psi, 0),
        "t1": lambda psi: sqd_decomposition(psi, 0).t1,
        "t2": lambda psi: sqd_decomposition(psi, 0).t2,
        "q3_A": lambda psi: q3_pure(psi, 0),
        "q3_B": lambda psi: q3_pure(psi, 1),
        "q3_C": lambda psi: q3_pure(psi, 2),
        "q3_mean": q3_mean,
        "ckw_residual": lambda psi: ckw_residual(psi, 0),
    }

    MIXED_MAP: Dict[str, Callable[[State], float]] = {
        "q3_mixed_A": lambda rho: q3_mixed_indicator(rho, 0),
        "q3_mixed_B": lambda rho: q3_mixed_indicator(rho, 1),
        "q3_mixed_C": lambda rho: q3_mixed_indicator(rho, 2),
        "q3_symmetric": q3_symmetric_mixed,
    }

    CAVITY_NAMES: List[str] = cavity_indicator_names()

    @classmethod
    def names(cls) -> List[str]:
        """Every known indicator name."""
        return list(cls.TRIPARTITE_MAP) + list(cls.MIXED_MAP) + cls.CAVITY_NAMES

    @classmethod
    def group_of(cls, name: str) -> str:
        """Group of an indicator: tripartite, mixed or cavity."""
        if name in cls.TRIPARTITE_MAP:
            return "tripartite"
        if name in cls.MIXED_MAP:
            return "mixed"
        if name in cls.CAVITY_NAMES:
            return "cavity"
        raise ValueError(f"Unknown indicator: {name}")

    @classmethod
    def evaluate(cls, state: State, names: Sequence[str]) -> List[float]:
        """Evaluate indicators on one state; cavity components share one pass."""
        cavity: Optional[Dict[str, float]] = None
        row = []
        for name in names:
            group = cls.group_of(name)
            if group == "cavity":
                if cavity is None:
                    cavity = cavity_indicators(state).flat()
                row.append(cavity[name])
            elif group == "mixed":
                row.append(float(cls.MIXED_MAP[name](state)))
            else:
                row.append(float(cls.TRIPARTITE_MAP[name](state)))
        return row


def grid_indices(
    shape: Sequence[int], max_points: Optional[int] = None
) -> Tuple[np.ndarray, bool]:
    """Row-major flat indices to evaluate, and whether the grid was subsampled.

    Large grids keep evenly spaced flat indices, first and last included.
    """
    total = int(np.prod(shape))
    if total == 0:
        raise ValueError("Sweep grid is empty")
    if max_points is None or total <= max_points:
        return np.arange(total), False
    if max_points < 1:
        raise ValueError("max_points must be positive")
    picked = np.unique(np.round(np.linspace(0, total - 1, max_points)).astype(int))
    logger.info(f"Subsampling {len(picked)} of {total} grid points")
    return picked, True


def indicator_sweep(
    axes: Sequence[SweepAxis],
    indicators: Sequence[str],
    family: str,
    params: Optional[Dict[str, float]] = None,
    max_points: Optional[int] = None,
) -> SweepTable:
    """Evaluate indicators over the Cartesian product of the axes.

    Rows follow row-major order with the last axis varying fastest.

    Args:
        axes: Grid axes, each naming a family parameter.
        indicators: Indicator names from :class:`IndicatorRegistry`.
        family: State family to sweep.
        params: Fixed family parameters.
        max_points: Cap on evaluated points; larger grids are subsampled.

    Returns:
        SweepTable: One row per evaluated point.

    Raises:
        ValueError: On unknown indicators or an empty axis.
    """
    for name in indicators:
        IndicatorRegistry.group_of(name)
    grids = [axis.values() for axis in axes]
    for axis, grid in zip(axes, grids):
        if grid.size == 0:
            raise ValueError(f"Axis {axis.name} is empty")
    shape = [len(grid) for grid in grids]
    flat, subsampled = grid_indices(shape, max_points)

    points = np.empty((len(flat), len(axes)))
    values = np.empty((len(flat), len(indicators)))
    for row, multi in enumerate(zip(*np.unravel_index(flat, shape))):
        point = {axis.name: float(grid[i]) for axis, grid, i in zip(axes, grids, multi)}
        points[row] = list(point.values())
        try:
            state = StateFactory.create_state(family, {**(params or {}), **point})
            values[row] = IndicatorRegistry.evaluate(state, indicators)
        except Exception:
            logger.exception(f"Indicator evaluation failed for {family} at {point}")
            raise
    return SweepTable(
        family=family,
        axis_names=[axis.name for axis in axes],
        indicator_names=list(indicators),
        points=points,
        values=values,
        subsampled=subsampled,
    )


def run_sweep(spec: SweepSpec) -> SweepTable:
    """Run a configured sweep."""
    logger.info(f"Running sweep {spec.name} over {spec.family}")
    return indicator_sweep(
        spec.axes, spec.indicators, spec.family, spec.fixed_params(), spec.max_points
    )


def is_unimodal(values: Sequence[float], tol: float = 1e-9) -> bool:
    """True if the sequence rises to its maximum then falls (within tol)."""
    arr = np.asarray(values, dtype=float)
    if arr.size < 3:
        return True
    peak = int(np.argmax(arr))
    steps = np.diff(arr)
    return bool(np.all(steps[:peak] >= -tol) and np.all(steps[peak:] <= tol))


def peak_offsets(
    table: SweepTable,
    pairs: Sequence[Tuple[str, str]],
    along: str = "kappa_t",
    fixed: Optional[Dict[str, float]] = None,
) -> Dict[str, float]:
    """Axis distance between the maxima of paired indicators.

    Returns ``{"<first>~<second>": x(argmax second) - x(argmax first)}``.
    """
    offsets = {}
    for first, second in pairs:
        x, y1 = table.series(first, along, fixed)
        _, y2 = table.series(second, along, fixed)
        offsets[f"{first}~{second}"] = float(x[np.argmax(y2)] - x[np.argmax(y1)])
    return offsets
