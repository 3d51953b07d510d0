import numpy as np
import pytest

from qmonogamy.dynamics.cavity import DampingParams, cavity_indicators, output_state
from qmonogamy.dynamics.figures import (
    FIG5_ALPHA,
    FIG5_PAIRS,
    check_figure,
    figure_sweeps,
)
from qmonogamy.dynamics.sweep import run_sweep


def run_figure(number, **grid):
    return [run_sweep(spec) for spec in figure_sweeps(number, **grid)]


def test_figure_one_contrast():
    """Test SQD stays monogamous where the plain QD distribution goes negative."""
    tables = run_figure(1, phi_points=21, p_step=0.02)
    check = check_figure(1, tables)
    assert check.passed, check.failures
    for family in ("gen_w", "two_param"):
        assert check.findings[f"{family}.min_sqd_dist"] >= -1e-9
        assert check.findings[f"{family}.min_qd_dist"] < -1e-3


@pytest.mark.slow
def test_figure_two_subsampled():
    """Test the SQD distribution over a subsampled generalized Schmidt grid."""
    (table,) = run_figure(2, acin_step=1 / 20, max_points=2000)
    assert table.subsampled
    assert len(table) == 2000
    check = check_figure(2, [table])
    assert check.passed
    assert check.findings["min_sqd_dist"] >= -1e-9


@pytest.mark.slow
def test_figure_two_default_grid():
    """Test the SQD distribution on the pi/40 grid capped at 1e5 points."""
    (table,) = run_figure(2)
    assert table.subsampled
    assert len(table) == 100_000
    check = check_figure(2, [table])
    assert check.passed, check.failures
    assert check.findings["min_sqd_dist"] >= -1e-9


def test_figure_four_coarse():
    """Test the cavity indicators on a coarse (kappa t, alpha) grid."""
    (table,) = run_figure(4, kt_step=0.25, kt_max=3.0, alpha_step=0.15)
    check = check_figure(4, [table])
    assert check.passed, check.failures
    assert check.findings["max_abs_at_zero"] <= 1e-9


@pytest.mark.slow
def test_figure_five_peaks():
    """Test correlation and entanglement peaks are offset at alpha = 1/sqrt(10)."""
    (table,) = run_figure(5)
    check = check_figure(5, [table])
    assert check.passed, check.failures
    offsets = [check.findings[f"offset.{a}~{b}"] for a, b in FIG5_PAIRS]
    assert any(value != 0 for value in offsets)
    for name in table.indicator_names:
        assert check.findings[f"unimodal.{name}"] == 1.0, name


def test_figure_five_matches_direct_evaluation():
    """Test figure 5 rows equal the indicators of the cavity state at each kappa t."""
    (table,) = run_figure(5, kt_step=0.5, kt_max=2.0)
    assert len(table) == 5
    for kappa_t, row in zip(table.column("kappa_t"), table.values):
        psi = output_state(DampingParams(kappa_t=kappa_t, alpha=FIG5_ALPHA))
        flat = cavity_indicators(psi).flat()
        expected = [flat[name] for name in table.indicator_names]
        assert np.allclose(row, expected, atol=1e-12)
