import csv
import io
import subprocess
import sys
from fractions import Fraction as F

import pytest

from bsim import cli


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


SWEEP = ["sweep", "--topology", "cross", "--n", "5", "--p-min", "0", "--p-max", "1", "--p-step", "1/9",
         "--trials", "20", "--seed", "99"]


def test_sweep_columns_and_order(capsys):
    code, out, _ = run(SWEEP + ["--mac", "node-fair"], capsys)
    assert code == 0
    header = out.splitlines()[0].split(",")
    assert tuple(header) == cli.SWEEP_COLUMNS
    for r in rows(out):
        assert float(r["S_min"]) <= float(r["S_mean"]) <= float(r["S_max"])
        assert float(r["S_mean"]) <= float(r["S_analytic_max"]) + 1e-9
        assert len(r["S_mean"].split(".")[1]) == 6


def test_sweep_is_byte_identical(capsys):
    _, a, _ = run(SWEEP, capsys)
    _, b, _ = run(SWEEP, capsys)
    _, c, _ = run(SWEEP[:-1] + ["100"], capsys)
    assert a == b and a != c


def test_seed_from_environment(capsys, monkeypatch):
    base = [x for x in SWEEP if x not in ("--seed", "99")]
    monkeypatch.setenv("BSIM_SEED", "99")
    _, env, _ = run(base, capsys)
    _, flag, _ = run(SWEEP, capsys)
    assert env == flag
    monkeypatch.setenv("BSIM_SEED", "-4")
    with pytest.raises(SystemExit) as exc:
        cli.main(base)
    assert exc.value.code == 2


def test_node_fair_peak_row(capsys):
    _, out, _ = run(["sweep", "--mac", "node-fair", "--nc", "false", "--m", "1", "--p-min", "5/9",
                     "--p-max", "5/9", "--p-step", "1", "--trials", "200"], capsys)
    (r,) = rows(out)
    assert float(r["S_analytic_max"]) == pytest.approx(5 / 9, abs=1e-6)
    assert float(r["S_mean"]) < 5 / 9


def test_flow_fair_mean_non_decreasing(capsys):
    _, out, _ = run(["sweep", "--mac", "flow-fair", "--nc", "true", "--m", "2", "--p-min", "0",
                     "--p-max", "3", "--p-step", "1/4", "--trials", "50"], capsys)
    means = [float(r["S_mean"]) for r in rows(out)]
    assert means == sorted(means)


def test_symmetric_matches_analytic_in_linear_region(capsys):
    _, out, _ = run(["sweep", "--symmetric", "--mac", "node-fair", "--trials", "1", "--p-min", "1/10",
                     "--p-max", "1/2", "--p-step", "1/10"], capsys)
    for r in rows(out):
        assert r["S_mean"] == r["P"]


@pytest.mark.parametrize("argv", [
    ["sweep", "--m", "3"],
    ["sweep", "--csma", "maybe"],
    ["sweep", "--mac", "fair"],
    ["sweep", "--seed", str(2**64)],
    ["sweep", "--p-step", "x"],
    ["bogus"],
    [],
])
def test_bad_flags_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


@pytest.mark.parametrize("argv", [
    ["sweep", "--topology", "cross", "--n", "6"],
    ["sweep", "--p-max", "6", "--n", "5"],
    ["sweep", "--p-step", "0"],
    ["sweep", "--trials", "0"],
    ["trace", "--topology", "x", "--x1-size", "9"],
    ["trace", "--packets", "-1"],
])
def test_model_errors_exit_3(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 3
    assert err.startswith("bsim: error:")


def test_table(capsys):
    code, out, _ = run(["table"], capsys)
    assert code == 0
    lines = out.splitlines()
    cross_uni = next(l for l in lines if l.startswith("cross") and "unicast" in l).split()
    assert cross_uni[2:] == ["2.8", "4.2", "3.6", "4.2", "6.3", "6.3"]
    x_bc = next(l for l in lines if l.startswith("x") and "broadcast" in l).split()
    assert x_bc[-1] == "5.0"
    _, out, _ = run(["table", "--format", "csv"], capsys)
    table = rows(out)
    assert len(table) == 24
    assert {r["exact"] for r in table if r["case"] == "routing"} == {"25/9"}


def test_asymptotic(capsys):
    _, out, _ = run(["asymptotic", "--topology", "x", "--nc", "true", "--m", "2", "--n-min", "101",
                     "--n-max", "101"], capsys)
    (r,) = rows(out)
    assert r["delay_sim"] == r["delay_analytic"] == "101"
    _, out, _ = run(["asymptotic", "--topology", "x", "--n-min", "101", "--n-max", "101"], capsys)
    assert rows(out)[0]["delay_sim"] == "201"
    _, out, _ = run(["asymptotic", "--topology", "x", "--nc", "true", "--m", "2", "--n-min", "5",
                     "--n-max", "5"], capsys)
    r = rows(out)[0]
    assert r["S_sim"] == r["S_analytic"] == "1.000000"
    _, out, _ = run(["asymptotic", "--topology", "cross", "--n-max", "9", "--simulate", "false"], capsys)
    assert [r["n"] for r in rows(out)] == ["5", "7", "9"] and rows(out)[0]["S_sim"] == ""


def test_trace_counts(capsys):
    _, out, _ = run(["trace", "--topology", "cross", "--nc", "true"], capsys)
    assert len(out.splitlines()) == 6
    _, out, _ = run(["trace", "--packets", "0"], capsys)
    assert out == ""
    _, out, _ = run(["trace", "--topology", "x", "--nc", "true", "--m", "2"], capsys)
    kinds = [l.split()[2] for l in out.splitlines()]
    assert kinds == ["kind=uplink"] * 2 + ["kind=coded"] * 2 + ["kind=own"]


def test_fraction_flags_are_exact():
    grid = cli._p_grid(F(0), F(1), F(1, 3))
    assert grid == [0, F(1, 3), F(2, 3), 1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bsim", "trace", "--topology", "cross", "--nc", "true"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.count("\n") == 6
