import math
from argparse import ArgumentParser

import numpy as np
import pytest

from qmonogamy.cli.utils import (
    add_state_parsing_options,
    build_state,
    emit_csv,
    format_value,
    panel_path,
    parse_block,
    parse_cut,
    state_params,
)
from qmonogamy.dynamics.sweep import SweepTable


def parse(argv):
    return add_state_parsing_options(ArgumentParser()).parse_args(argv)


def test_named_params():
    """Test named flags map onto family parameters."""
    args = parse(["--state", "w3", "--a", "0.5", "--b", "0.5", "--c", "0.7"])
    assert state_params(args) == {"a": 0.5, "b": 0.5, "c": 0.7}


def test_positional_params():
    """Test --params fills parameters in field order."""
    args = parse(["--state", "two_param", "--params", "0.3", "0.5"])
    assert state_params(args) == {"p": 0.3, "epsilon": 0.5}


def test_times_pi_scales_angles_only():
    """Test --times-pi scales angle parameters and nothing else."""
    args = parse(["--state", "gen_w", "--theta", "0.25", "--phi", "0.5", "--times-pi"])
    expected = {"theta": 0.25 * math.pi, "phi": 0.5 * math.pi}
    assert state_params(args) == pytest.approx(expected)
    args = parse(["--state", "cavity", "--kt", "0.5", "--alpha", "0.3", "--times-pi"])
    assert state_params(args) == {"kappa_t": 0.5, "alpha": 0.3}


def test_foreign_param_rejected():
    """Test flags that do not belong to the family raise."""
    with pytest.raises(ValueError):
        state_params(parse(["--state", "ghz3", "--theta", "0.5"]))


def test_build_cavity_state():
    """Test --kt builds the cavity output state."""
    args = parse(["--state", "cavity", "--kt", "1.0", "--alpha", "0.6"])
    state, params = build_state(args)
    assert state.labels == ["c1", "r1", "c2", "r2"]
    assert params == {"kappa_t": 1.0, "alpha": 0.6}


@pytest.mark.parametrize(
    "token,left,right",
    [("A|BC", [0], [1, 2]), ("C|A", [2], [0]), ("0|1,2", [0], [1, 2])],
    ids=["labels", "reversed", "indices"],
)
def test_parse_cut(ghz3, token, left, right):
    """Test cuts given by labels or indices."""
    assert parse_cut(token, ghz3) == (left, right)


def test_parse_cut_on_cavity_labels(cavity):
    """Test multi-character labels, compact or comma separated."""
    psi = cavity(0.5)
    assert parse_cut("c1|c2r2", psi) == ([0], [2, 3])
    assert parse_block("c2,r2", psi) == [2, 3]


@pytest.mark.parametrize(
    "token", ["AB", "A|B|C", "A|Z"], ids=["no-bar", "two-bars", "unknown"]
)
def test_parse_cut_errors(ghz3, token):
    """Test malformed cuts raise."""
    with pytest.raises(ValueError):
        parse_cut(token, ghz3)


def test_format_value():
    """Test nine significant digits."""
    assert format_value(math.pi) == "3.14159265"
    assert format_value(0.0) == "0"


def test_panel_path():
    """Test panel names are appended only for multi-panel figures."""
    assert panel_path("out/fig1.csv", "gen_w", 1) == "out/fig1.csv"
    assert panel_path("out/fig1.csv", "gen_w", 2) == "out/fig1_gen_w.csv"


def test_emit_csv(tmp_path):
    """Test header, row order and LF line endings."""
    table = SweepTable(
        family="cavity",
        axis_names=["kappa_t"],
        indicator_names=["q"],
        points=np.array([[0.0], [0.5]]),
        values=np.array([[0.0], [1 / 3]]),
    )
    path = emit_csv(table, str(tmp_path / "table.csv"))
    assert path.read_bytes() == b"kappa_t,q\n0,0\n0.5,0.333333333\n"
