import pytest

from qmonogamy import __version__
from qmonogamy.cli.main import dispatch


def plain_value(output: str, quantity: str) -> str:
    """Value column of one row of a ``-f plain`` table."""
    for line in output.splitlines():
        parts = line.split()
        if parts and parts[0] == quantity:
            return parts[-1]
    raise AssertionError(f"{quantity} not found in output:\n{output}")


def test_version_short(capsys):
    """Test the short version output."""
    assert dispatch(["version", "--short"]) == 0
    assert capsys.readouterr().out.strip() == __version__


def test_no_command(capsys):
    """Test running without a command prints help and succeeds."""
    assert dispatch([]) == 0
    assert "qmono <command>" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["measure", "--state", "ghz3"],
        ["measure", "--measure", "entropy", "--state", "ghz3", "--alpha", "2.0"],
        ["measure", "--measure", "entropy", "--state", "ghz3", "--theta", "0.5"],
        ["measure", "--measure", "entropy", "--state", "nope"],
        ["q3", "--state", "cluster4"],
        ["q4", "--state", "ghz3", "--alpha", "0.5"],
        ["monogamy-check", "--samples", "5"],
        ["sweep", "--family", "gen_w", "--out", "unused.csv"],
    ],
    ids=[
        "unknown-command",
        "missing-measure",
        "out-of-range",
        "foreign-param",
        "unknown-family",
        "q3-wrong-size",
        "q4-wrong-size",
        "missing-seed",
        "incomplete-sweep",
    ],
)
def test_usage_errors(argv):
    """Test invalid invocations exit with code 2."""
    assert dispatch(argv) == 2


def test_measure_concurrence(capsys):
    """Test the GHZ A|BC concurrence."""
    argv = ["measure", "--measure", "concurrence", "--state", "ghz3"]
    argv += ["--alpha", "0.7071067811865476", "--cut", "A|BC", "-f", "plain"]
    assert dispatch(argv) == 0
    value = plain_value(capsys.readouterr().out, "C(A|BC)")
    assert float(value) == pytest.approx(1.0, abs=1e-9)


def test_measure_discord_route(capsys):
    """Test the discord row reports the chosen route."""
    argv = ["measure", "--measure", "discord", "--state", "gen_w"]
    argv += ["--theta", "0.25", "--phi", "0.25", "--times-pi", "--cut", "A|B"]
    assert dispatch(argv + ["-f", "plain"]) == 0
    out = capsys.readouterr().out
    assert plain_value(out, "route") in {"xstate", "koashi_winter"}
    assert float(plain_value(out, "D(A|B)")) > 0


def test_measure_tangle(capsys):
    """Test the W state has zero tangle."""
    argv = ["measure", "--measure", "tangle", "--state", "w3"]
    assert dispatch(argv + ["--params", "1", "1", "1", "-f", "plain"]) == 0
    value = plain_value(capsys.readouterr().out, "tau3(A)")
    assert float(value) == pytest.approx(0.0, abs=1e-9)


def test_q3_w_class(capsys):
    """Test the W-class example reaches Q3 = 0.2779."""
    argv = ["q3", "--state", "w3", "--a", "0.5", "--b", "0.5", "--c", "0.70710678"]
    assert dispatch(argv + ["--pivot", "A", "-f", "plain"]) == 0
    out = capsys.readouterr().out
    assert float(plain_value(out, "Q3(A)")) == pytest.approx(0.2779, abs=1e-3)
    assert plain_value(out, "monogamous(A)") == "True"


def test_q3_mixed(capsys):
    """Test a mixed state reports the tripartite indicator."""
    argv = ["q3", "--state", "rank2_w", "--params", "0.4", "0.4", "0.4", "--times-pi"]
    assert dispatch(argv + ["-f", "plain"]) == 0
    out = capsys.readouterr().out
    assert "symmetric" in out


def test_q4_cavity(capsys):
    """Test the cavity register reports Q4, Q3, E4 and E3 components."""
    argv = ["q4", "--state", "cavity", "--kt", "0.5", "--alpha", "0.3162"]
    assert dispatch(argv + ["-f", "plain"]) == 0
    out = capsys.readouterr().out
    for kind in ("q4_1x3", "q4_2x2", "q3", "e4_1x3", "e4_2x2", "e3_1x2"):
        assert kind in out


def test_monogamy_check(capsys):
    """Test the harness passes on a small sample."""
    argv = ["monogamy-check", "--samples", "20", "--seed", "7", "-f", "plain"]
    assert dispatch(argv) == 0
    assert "passed" in capsys.readouterr().out


def test_selftest():
    """Test the route cross-check passes on a small sample."""
    argv = ["selftest", "--seed", "7", "--samples", "5", "--xstate-samples", "3"]
    assert dispatch(argv) == 0


def test_sweep_config_is_deterministic(sweeps_path, tmp_path):
    """Test the same sweep twice writes byte-identical CSV files."""
    first, second = tmp_path / "first.csv", tmp_path / "second.csv"
    config = str(sweeps_path / "rank2_w.yaml")
    assert dispatch(["sweep", "--config", config, "--out", str(first)]) == 0
    assert dispatch(["sweep", "--config", config, "--out", str(second)]) == 0
    content = first.read_bytes()
    assert content == second.read_bytes()
    lines = content.decode("utf-8").split("\n")
    assert lines[0] == "theta1,q3_mixed_A,q3_mixed_B,q3_mixed_C,q3_symmetric"
    assert lines[-1] == ""
    assert len(lines) == 11
    assert b"\r" not in content


def test_sweep_inline(tmp_path):
    """Test an inline sweep with pi units."""
    out = tmp_path / "gen_w.csv"
    argv = ["sweep", "--family", "gen_w", "--param", "theta=0.7853981633974483"]
    argv += ["--axis", "phi:0:0.5:0.125", "--times-pi"]
    argv += ["--indicators", "qd_dist", "sqd_dist"]
    assert dispatch(argv + ["--out", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "phi,qd_dist,sqd_dist"
    assert len(rows) == 6


@pytest.mark.parametrize(
    "axis,indicator",
    [
        ("kappa_t:1:0:0.1", "q3_c1_c2r2"),
        ("kappa_t:0:1:0.5", "bogus"),
        ("kappa_t:0:1", "q3_c1_c2r2"),
    ],
    ids=["empty-axis", "unknown-indicator", "malformed-axis"],
)
def test_sweep_rejects_bad_grids(tmp_path, axis, indicator):
    """Test bad sweeps exit 2 without writing a file."""
    out = tmp_path / "bad.csv"
    argv = ["sweep", "--family", "cavity", "--param", "alpha=0.5", "--axis", axis]
    assert dispatch(argv + ["--indicators", indicator, "--out", str(out)]) == 2
    assert not out.exists()


def test_sweep_missing_config(tmp_path):
    """Test a missing sweep file is a usage error."""
    config, out = str(tmp_path / "none.yaml"), str(tmp_path / "x.csv")
    assert dispatch(["sweep", "--config", config, "--out", out]) == 2


@pytest.mark.parametrize(
    "target",
    ["", "missing/x.csv"],
    ids=["directory", "missing-parent"],
)
def test_sweep_unwritable_out(tmp_path, target):
    """Test an output path that cannot be written is a usage error."""
    out = tmp_path / target if target else tmp_path
    argv = ["sweep", "--family", "gen_w", "--param", "theta=0.25", "--times-pi"]
    argv += ["--axis", "phi:0:0.5:0.25", "--indicators", "sqd_dist"]
    assert dispatch(argv + ["--out", str(out)]) == 2


def test_figure_writes_one_file_per_panel(tmp_path):
    """Test multi-panel figures write one CSV per panel."""
    out = tmp_path / "fig1.csv"
    argv = ["figure", "1", "--out", str(out), "--phi-points", "5", "--p-step", "0.25"]
    code = dispatch(argv)
    assert code in (0, 1)
    assert (tmp_path / "fig1_gen_w.csv").exists()
    assert (tmp_path / "fig1_two_param.csv").exists()
    assert not out.exists()


def test_figure_four_coarse(tmp_path):
    """Test a coarse figure 4 grid passes its checks."""
    out = tmp_path / "fig4.csv"
    argv = ["figure", "4", "--out", str(out), "--kt-step", "0.5", "--kt-max", "2"]
    assert dispatch(argv + ["--alpha-step", "0.45"]) == 0
    rows = out.read_text().splitlines()
    assert rows[0].startswith("kappa_t,alpha,q4_1x3_c1_r1c2r2")
    assert len(rows) == 1 + 5 * 3


def test_figure_unknown_number(tmp_path):
    """Test figure numbers outside 1, 2, 4, 5 are usage errors."""
    assert dispatch(["figure", "3", "--out", str(tmp_path / "fig3.csv")]) == 2
