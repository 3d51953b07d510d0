import math

import numpy as np
import pytest

from qmonogamy.dynamics.cavity import CLAIMED_INDICATORS
from qmonogamy.dynamics.figures import FIG4_INDICATORS, check_figure, figure_sweeps
from qmonogamy.dynamics.sweep import (
    IndicatorRegistry,
    SweepAxis,
    SweepSpec,
    SweepTable,
    grid_indices,
    indicator_sweep,
    is_unimodal,
    peak_offsets,
    run_sweep,
)

P_AXIS = dict(name="p", start=0, stop=1, step=0.5)
PHI_AXIS = dict(name="phi", start=0, stop=1, step=0.5)


def make_table(values, indicators=("q",), axis="kappa_t", step=0.5) -> SweepTable:
    values = np.asarray(values, dtype=float).reshape(len(values), -1)
    return SweepTable(
        family="cavity",
        axis_names=[axis],
        indicator_names=list(indicators),
        points=(np.arange(len(values)) * step).reshape(-1, 1),
        values=values,
    )


# Tests for axes and specs


@pytest.mark.parametrize(
    "axis,count,last",
    [
        (SweepAxis(name="alpha", start=0.05, stop=0.95, step=0.05), 19, 0.95),
        (SweepAxis(name="kappa_t", start=0.0, stop=6.0, step=0.05), 121, 6.0),
        (
            SweepAxis(name="phi", start=0.0, stop=0.5, num=101, times_pi=True),
            101,
            0.5 * math.pi,
        ),
        (
            SweepAxis(name="theta0", start=0.0, stop=0.5, step=1 / 40, times_pi=True),
            21,
            0.5 * math.pi,
        ),
    ],
    ids=["alpha", "kappa_t", "phi-num", "theta-pi"],
)
def test_axis_values(axis, count, last):
    """Test inclusive grids by step and by point count."""
    values = axis.values()
    assert len(values) == count
    assert values[-1] == pytest.approx(last, abs=1e-12)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(start=0.0, stop=1.0),
        dict(start=0.0, stop=1.0, step=0.1, num=3),
        dict(start=1.0, stop=0.0, step=0.1),
        dict(start=0.0, stop=1.0, step=-0.1),
        dict(start=0.0, stop=1.0, num=0),
    ],
    ids=["no-grid", "both", "reversed", "negative-step", "empty"],
)
def test_invalid_axes(kwargs):
    """Test malformed axes are rejected."""
    with pytest.raises(ValueError):
        SweepAxis(name="p", **kwargs)


def test_spec_from_yaml(sweeps_path):
    """Test loading a sweep file."""
    spec = SweepSpec.from_yaml(str(sweeps_path / "fig5.yaml"))
    assert spec.family == "cavity"
    assert spec.params["alpha"] == pytest.approx(1 / math.sqrt(10))
    assert len(spec.indicators) == 8
    assert len(spec.axes[0].values()) == 121


def test_spec_resolves_pi_units(sweeps_path):
    """Test fixed parameters in units of pi are scaled."""
    spec = SweepSpec.from_yaml(str(sweeps_path / "rank2_w.yaml"))
    expected = {"theta2": 0.4 * math.pi, "theta3": 0.4 * math.pi}
    assert spec.fixed_params() == pytest.approx(expected)


def test_spec_missing_file():
    """Test a missing sweep file raises."""
    with pytest.raises(FileNotFoundError):
        SweepSpec.from_yaml("no/such/sweep.yaml")


@pytest.mark.parametrize(
    "data",
    [
        dict(family="bogus", axes=[P_AXIS], indicators=["t1"]),
        dict(family="gen_w", axes=[P_AXIS], indicators=["t1"]),
        dict(family="gen_w", axes=[PHI_AXIS], indicators=["bogus"]),
        dict(family="gen_w", axes=[PHI_AXIS], indicators=[]),
        dict(
            family="gen_w",
            params={"phi": 0.1},
            axes=[PHI_AXIS],
            indicators=["t1"],
        ),
        dict(family="gen_w", axes=[PHI_AXIS, PHI_AXIS], indicators=["t1"]),
    ],
    ids=[
        "family",
        "axis-param",
        "indicator",
        "no-indicators",
        "fixed-and-swept",
        "duplicate-axis",
    ],
)
def test_invalid_specs(data):
    """Test inconsistent sweep specs are rejected."""
    with pytest.raises(ValueError):
        SweepSpec.from_dict(data)


# Tests for the grid and the table


def test_grid_indices_full():
    """Test small grids are evaluated in full."""
    indices, subsampled = grid_indices([3, 4])
    assert list(indices) == list(range(12))
    assert not subsampled


def test_grid_indices_subsampled():
    """Test large grids keep evenly spaced points including both ends."""
    indices, subsampled = grid_indices([21, 21, 21, 21], max_points=1000)
    assert subsampled
    assert len(indices) == 1000
    assert indices[0] == 0
    assert indices[-1] == 21**4 - 1
    assert np.all(np.diff(indices) > 0)


def test_grid_indices_empty():
    """Test empty grids raise."""
    with pytest.raises(ValueError):
        grid_indices([0, 3])


def test_table_shape_is_checked():
    """Test mismatched point and value arrays raise."""
    with pytest.raises(ValueError):
        SweepTable(
            family="gen_w",
            axis_names=["phi"],
            indicator_names=["t1"],
            points=np.zeros((3, 1)),
            values=np.zeros((2, 1)),
        )


def test_table_rejects_nan():
    """Test non-finite cells raise."""
    with pytest.raises(ValueError):
        make_table([0.0, float("nan"), 1.0])


def test_table_columns_and_summary():
    """Test column access, selection and the min/max summary."""
    table = make_table([[0.0, 1.0], [2.0, -1.0], [1.0, 0.5]], indicators=("x", "y"))
    assert list(table.column("kappa_t")) == [0.0, 0.5, 1.0]
    assert list(table.select(["y"]).column("y")) == [1.0, -1.0, 0.5]
    assert table.summary() == [["x", 0.0, 2.0], ["y", -1.0, 1.0]]
    with pytest.raises(ValueError):
        table.column("z")


def test_registry_groups():
    """Test indicator names resolve to their evaluator group."""
    assert IndicatorRegistry.group_of("sqd_dist") == "tripartite"
    assert IndicatorRegistry.group_of("q3_symmetric") == "mixed"
    assert IndicatorRegistry.group_of("q4_1x3_c1_r1c2r2") == "cavity"
    with pytest.raises(ValueError):
        IndicatorRegistry.group_of("bogus")


def test_generalized_w_sweep():
    """Test a small sweep: SQD distribution non-negative, rows in grid order."""
    axis = SweepAxis(name="phi", start=0.0, stop=0.5, num=5, times_pi=True)
    fixed = {"theta": 0.25 * math.pi}
    table = indicator_sweep([axis], ["qd_dist", "sqd_dist"], "gen_w", fixed)
    assert len(table) == 5
    assert list(table.column("phi")) == pytest.approx(list(axis.values()))
    assert np.min(table.column("sqd_dist")) >= -1e-9
    # the W-like point phi = pi/4 is polygamous for unsquared discord
    assert table.column("qd_dist")[2] < -1e-3


def test_two_axis_sweep_order():
    """Test the last axis varies fastest."""
    axes = [
        SweepAxis(name="kappa_t", start=0.5, stop=1.0, num=2),
        SweepAxis(name="alpha", start=0.2, stop=0.6, num=3),
    ]
    table = indicator_sweep(axes, ["q3_c1_c2r2"], "cavity")
    assert np.allclose(
        table.points,
        [[0.5, 0.2], [0.5, 0.4], [0.5, 0.6], [1.0, 0.2], [1.0, 0.4], [1.0, 0.6]],
    )


def test_rank2_w_sweep(sweeps_path):
    """Test the mixed-state sweep matches the single-point value."""
    table = run_sweep(SweepSpec.from_yaml(str(sweeps_path / "rank2_w.yaml")))
    assert len(table) == 9
    row = int(np.argmin(np.abs(table.column("theta1") - 0.4 * math.pi)))
    assert table.column("q3_mixed_A")[row] == pytest.approx(-0.005171, abs=2e-4)
    mean = sum(table.column(f"q3_mixed_{label}") for label in "ABC") / 3
    assert np.allclose(table.column("q3_symmetric"), mean, atol=1e-12)


# Tests for the shape helpers and figure specs


@pytest.mark.parametrize(
    "values,expected",
    [
        ([0, 1, 2, 1, 0], True),
        ([0, 0, 0], True),
        ([3, 2, 1], True),
        ([0, 2, 1, 2, 0], False),
        ([0, 1], True),
    ],
    ids=["peak", "flat", "decreasing", "two-peaks", "short"],
)
def test_is_unimodal(values, expected):
    """Test single-peak detection."""
    assert is_unimodal(values) is expected


def test_peak_offsets():
    """Test the offset between two maxima along an axis."""
    table = make_table([[0, 0], [1, 3], [2, 2], [1, 1]], indicators=("q", "e"))
    assert peak_offsets(table, [("q", "e")]) == {"q~e": -0.5}


def test_figure_specs():
    """Test the canned figure grids."""
    fig1 = figure_sweeps(1)
    assert [spec.name for spec in fig1] == ["gen_w", "two_param"]
    assert len(fig1[1].axes[0].values()) == 101
    (fig2,) = figure_sweeps(2)
    assert [len(axis.values()) for axis in fig2.axes] == [21] * 4
    assert fig2.max_points == 100_000
    (fig4,) = figure_sweeps(4)
    assert fig4.indicators == FIG4_INDICATORS
    assert [len(axis.values()) for axis in fig4.axes] == [121, 19]
    (fig5,) = figure_sweeps(5)
    assert fig5.params["alpha"] == pytest.approx(1 / math.sqrt(10))
    for spec in (fig4, fig5):
        assert set(spec.indicators) <= set(CLAIMED_INDICATORS)
    with pytest.raises(ValueError):
        figure_sweeps(3)


def test_check_figure_flags_negative_values():
    """Test a negative indicator fails the figure check."""
    table = make_table([[0.0], [0.2], [-0.1]], indicators=FIG4_INDICATORS[:1])
    check = check_figure(4, [table])
    assert not check.passed
    assert check.findings["min_indicator"] == pytest.approx(-0.1)
