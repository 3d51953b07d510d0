"""
Canned sweeps behind the published figures and the claims checked on them.

Figure 1: QD vs SQD distribution for the generalized W family (theta = pi/4)
and the two-parameter family (epsilon = 0.5). Figure 2: SQD distribution
over the generalized Schmidt family. Figures 4 and 5: cavity indicators
over (kappa t, alpha) and at alpha = 1/sqrt(10).
"""

import math
from typing import Dict, List, Sequence

import numpy as np
from pydantic.v1 import BaseModel, Field

from qmonogamy.constants import CLIP_TOL
from qmonogamy.dynamics.sweep import (
    SweepAxis,
    SweepSpec,
    SweepTable,
    is_unimodal,
    peak_offsets,
)
from qmonogamy.utils.log import get_logger

logger = get_logger(__name__)

FIGURES = [1, 2, 4, 5]

FIG4_INDICATORS = [
    "q4_1x3_c1_r1c2r2",
    "q4_2x2_c1r1_c2r2",
    "q3_c1_c2r2",
    "q3_r1_c2r2",
]

FIG5_PAIRS = [
    ("q4_1x3_c1_r1c2r2", "e4_1x3_c1_r1c2r2"),
    ("q4_2x2_c1r1_c2r2", "e4_2x2_c1r1_c2r2"),
    ("q3_c1_c2r2", "e3_1x2_c1_c2r2"),
    ("q3_r1_c2r2", "e3_1x2_r1_c2r2"),
]

FIG5_ALPHA = 1 / math.sqrt(10)


def figure_sweeps(
    number: int,
    kt_step: float = 0.05,
    kt_max: float = 6.0,
    alpha_step: float = 0.05,
    phi_points: int = 101,
    p_step: float = 0.01,
    acin_step: float = 1 / 40,
    max_points: int = 100_000,
) -> List[SweepSpec]:
    """Sweep specs for one figure, one spec per panel.

    Args:
        number: Figure number, one of 1, 2, 4, 5.
        kt_step: kappa t grid step for figures 4 and 5.
        kt_max: Largest kappa t.
        alpha_step: alpha grid step for figure 4 (alpha in [0.05, 0.95]).
        phi_points: phi grid points on [0, pi/2] for figure 1.
        p_step: p grid step for figure 1.
        acin_step: theta grid step for figure 2, in units of pi.
        max_points: Point cap for figure 2.

    Raises:
        ValueError: On an unknown figure number.
    """
    if number == 1:
        return [
            SweepSpec(
                name="gen_w",
                family="gen_w",
                params={"theta": 0.25},
                pi_units=["theta"],
                axes=[
                    SweepAxis(
                        name="phi", start=0.0, stop=0.5, num=phi_points, times_pi=True
                    )
                ],
                indicators=["qd_dist", "sqd_dist"],
            ),
            SweepSpec(
                name="two_param",
                family="two_param",
                params={"epsilon": 0.5},
                axes=[SweepAxis(name="p", start=0.0, stop=1.0, step=p_step)],
                indicators=["qd_dist", "sqd_dist"],
            ),
        ]
    if number == 2:
        theta_axes = [
            SweepAxis(
                name=f"theta{i}", start=0.0, stop=0.5, step=acin_step, times_pi=True
            )
            for i in range(4)
        ]
        return [
            SweepSpec(
                name="acin",
                family="acin",
                params={"phi": 0.0},
                axes=theta_axes,
                indicators=["sqd_dist"],
                max_points=max_points,
            )
        ]
    kt_axis = SweepAxis(name="kappa_t", start=0.0, stop=kt_max, step=kt_step)
    if number == 4:
        return [
            SweepSpec(
                name="cavity",
                family="cavity",
                axes=[
                    kt_axis,
                    SweepAxis(name="alpha", start=0.05, stop=0.95, step=alpha_step),
                ],
                indicators=FIG4_INDICATORS,
            )
        ]
    if number == 5:
        return [
            SweepSpec(
                name="cavity",
                family="cavity",
                params={"alpha": FIG5_ALPHA},
                axes=[kt_axis],
                indicators=[name for pair in FIG5_PAIRS for name in pair],
            )
        ]
    raise ValueError(f"Unknown figure {number}; choose from {FIGURES}")


class FigureCheck(BaseModel):
    """Outcome of the claims checked on one figure's sweeps"""

    number: int
    passed: bool
    findings: Dict[str, float] = Field(default_factory=dict)
    """Named values backing the verdict (minima, peak offsets)"""
    failures: List[str] = Field(default_factory=list)


def _minimum(table: SweepTable, names: Sequence[str]) -> float:
    return float(min(np.min(table.column(name)) for name in names))


def check_figure(number: int, tables: Sequence[SweepTable]) -> FigureCheck:
    """Check the published qualitative claims on a figure's tables.

    1: SQD distribution >= 0 while the QD distribution dips negative.
    2: SQD distribution >= 0 over the whole grid.
    4: every indicator >= 0 and zero at kappa t = 0.
    5: indicators >= 0 and at least one correlation/entanglement pair peaks
       at different kappa t.
    """
    findings: Dict[str, float] = {}
    failures: List[str] = []
    if number == 1:
        for table in tables:
            sqd_min = _minimum(table, ["sqd_dist"])
            qd_min = _minimum(table, ["qd_dist"])
            findings[f"{table.family}.min_sqd_dist"] = sqd_min
            findings[f"{table.family}.min_qd_dist"] = qd_min
            if sqd_min < -CLIP_TOL:
                failures.append(
                    f"{table.family}: SQD distribution negative ({sqd_min:.3e})"
                )
            if qd_min >= -1e-3:
                failures.append(
                    f"{table.family}: QD distribution never clearly negative "
                    f"({qd_min:.3e})"
                )
    elif number == 2:
        (table,) = tables
        findings["min_sqd_dist"] = _minimum(table, ["sqd_dist"])
        findings["points"] = float(len(table))
        if findings["min_sqd_dist"] < -CLIP_TOL:
            failures.append(
                f"SQD distribution negative ({findings['min_sqd_dist']:.3e})"
            )
    elif number in (4, 5):
        (table,) = tables
        names = table.indicator_names
        findings["min_indicator"] = _minimum(table, names)
        if findings["min_indicator"] < -CLIP_TOL:
            failures.append(f"Indicator negative ({findings['min_indicator']:.3e})")
        start = np.isclose(table.column("kappa_t"), 0.0)
        if np.any(start):
            findings["max_abs_at_zero"] = float(np.max(np.abs(table.values[start])))
            if findings["max_abs_at_zero"] > CLIP_TOL:
                failures.append("Indicators do not vanish at kappa_t = 0")
        if number == 5:
            offsets = peak_offsets(table, FIG5_PAIRS)
            findings.update({f"offset.{key}": value for key, value in offsets.items()})
            if all(value == 0 for value in offsets.values()):
                failures.append(
                    "Correlation and entanglement peaks coincide for every pair"
                )
            for name in names:
                _, values = table.series(name, "kappa_t")
                findings[f"unimodal.{name}"] = float(is_unimodal(values, tol=1e-7))
    else:
        raise ValueError(f"Unknown figure {number}; choose from {FIGURES}")

    for failure in failures:
        logger.error(f"Figure {number}: {failure}")
    return FigureCheck(
        number=number, passed=not failures, findings=findings, failures=failures
    )
