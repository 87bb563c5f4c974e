# -*- coding: utf-8 -*-
import json
import tempfile
from pathlib import Path

import pytest

from skperc import RunManifest
from skperc.__main__ import main


def test_onset_command(capsys):
    """Test that the onset of monotonicity on the 3-cycle is reported as at most 2"""
    assert main(["onset", "--k", "3", "--p", "0.5", "--n-max", "64", "--json"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["onset"] <= 2


def test_onset_command_exact(capsys):
    """Test that the onset is also found with exact rational comparisons"""
    assert main(["onset", "--k", "3", "--p", "0.5", "--n-max", "6", "--exact", "--json"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["exact"]
    assert 1 <= result["onset"] <= 2
    assert result["monotone_at_onset"]


def test_theorem3_command(capsys):
    """Test that the series bound passes at p = 0.35"""
    assert main(["theorem3", "--p", "0.35"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["product"] <= 1
    assert result["passed"]


def test_theorem3_divergent():
    """Test that parameters outside the domain of the series are usage errors"""
    assert main(["theorem3", "--p", "0.37"]) == 2


def test_saw_command(capsys):
    """Test the CSV table of the walk census"""
    assert main(["saw", "--max-a", "6", "--max-b", "6", "--max-c", "6", "--max-d", "6", "--csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "l,a,b,c,d"
    assert lines[7].startswith("6,40,")


def test_patterns_command(capsys):
    """Test that the 3-cycle has ten attainable infected patterns"""
    assert main(["patterns", "--k", "3", "--attainable", "--csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 11


def test_kernel_command(capsys):
    """Test that transition probabilities out of every pattern sum to one"""
    assert main(["kernel", "--k", "3", "--p", "0.3", "--format", "json"]) == 0
    entries = json.loads(capsys.readouterr().out)["entries"]
    totals = dict()
    for entry in entries:
        totals[entry["y"]] = totals.get(entry["y"], 0) + entry["probability"]
    assert all(total == pytest.approx(1, abs=1e-12) for total in totals.values())


def test_qsd_command(capsys):
    """Test the quasi-stationary distribution of the 3-cycle"""
    assert main(["qsd", "--k", "3", "--p", "0.5"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert 0 < result["lambda"] < 1
    assert result["residual"] <= 1e-12
    assert result["floor_holds"]


def test_bounds_command(capsys):
    """Test the uniform onset bound on small circumferences"""
    assert main(["bounds", "--k-min", "3", "--k-max", "5", "--density", "50"]) == 0
    assert json.loads(capsys.readouterr().out)["passed"]


def test_bounds_table(capsys):
    """Test the table of onset formulas"""
    assert main(["bounds", "--k-min", "3", "--k-max", "3", "--table", "--p-values", "0.2", "0.5"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert [row["p"] for row in rows] == [0.2, 0.5]
    assert all(row["N_main"] == 2702722 for row in rows)


@pytest.mark.parametrize(
    "args", [["onset", "--k", "3", "--p", "0.5", "--unknown"], ["mc", "--k", "3"], ["saw", "--threads", "0"], []]
)
def test_usage_errors(args):
    """Test that invalid command lines exit with code 2"""
    assert main(args) == 2


def test_mc_manifest():
    """Test that Monte Carlo runs write a manifest with their seed and reproduce exactly"""
    args = ["mc", "--k", "3", "--p", "0.5", "--functional", "W", "--n", "2", "--samples", "200", "--depth", "5"]
    with tempfile.TemporaryDirectory() as tmpdir:
        first, second = Path(tmpdir) / "first.json", Path(tmpdir) / "second.json"
        assert main(args + ["--seed", "4", "--output", str(first)]) == 0
        assert main(args + ["--seed", "4", "--output", str(second)]) == 0

        manifest = RunManifest.from_file(Path(tmpdir) / "first.json.manifest.json")
        assert manifest.subcommand == "mc"
        assert manifest.seeds == (4,)
        assert manifest.outputs == (str(first),)
        assert manifest.reproduces(RunManifest.from_file(Path(tmpdir) / "second.json.manifest.json"))
        assert first.read_text() == second.read_text()
