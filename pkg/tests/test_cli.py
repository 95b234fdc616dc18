import json
import subprocess
import sys

import pytest

from dlcohomology.cli import run


def cli(*args):
    return run(list(args), quiet=True)


def test_cohomology_table():
    code, lines = cli("cohomology", "--n", "5", "--d", "4", "--format", "table")
    assert code == 0
    rows = [ln.split() for ln in lines[2:]]
    assert [(r[0], r[1], r[3]) for r in rows] == [
        ("5", "q^0", "N(1+1+1+1+1)"), ("6", "q^2", "N(2+2+1)"), ("7", "q^3", "N(3+2)"), ("10", "q^5", "N(5)")]


def test_cohomology_json_is_deterministic():
    a = cli("cohomology", "--n", "7", "--d", "3", "--format", "json")[1]
    b = cli("--format", "json", "cohomology", "--n", "7", "--d", "3")[1]
    assert a == b
    data = json.loads("\n".join(a))
    assert data["ring_tag"] == "char-zero" and data["notes"]


def test_cohomology_with_mu_and_normalization():
    code, lines = cli("cohomology", "--n", "6", "--d", "3", "--mu", "2+1", "--normalization", "C", "--format", "json")
    assert code == 0
    assert json.loads("\n".join(lines))["normalization"] == "C"


def test_gate_exit_codes():
    assert cli("cohomology", "--n", "4", "--d", "3", "--mod-m", "4")[0] == 1
    assert cli("cohomology", "--n", "4", "--d", "3", "--mod-m", "4", "--override")[0] == 0
    assert cli("cohomology", "--n", "5", "--d", "4", "--mod-m", "5")[0] == 0


@pytest.mark.parametrize("args", [
    ["cohomology", "--n", "3", "--d", "5"],
    ["cohomology", "--n", "5"],
    ["nope"],
    ["brauer", "--m", "3", "--p", "4"],
])
def test_usage_errors(args):
    assert cli(*args)[0] == 2


def test_tilting_command():
    code, lines = cli("tilting", "--m", "5", "--r", "1", "--j", "5")
    assert code == 0 and "partial-tilting: true" in lines


def test_brauer_labels():
    code, lines = cli("brauer", "--m", "5", "--labels", "5", "--format", "json")
    data = json.loads("\n".join(lines))
    assert code == 0 and data["labels"]["5"] == "1+1+1+1+1"
    assert data["hom_dims"][4] == [0, 0, 0, 1, 2]


def test_blocks_and_invariants():
    assert cli("blocks", "--n", "5", "--d", "4")[0] == 0
    code, lines = cli("invariants", "--n", "8", "--d", "3")
    assert code == 0 and any("2n-2d" in ln for ln in lines)


def test_check_les():
    code, lines = cli("check-les", "--max-n", "6")
    assert code == 0 and lines[0].endswith("cells balanced")


def test_dl_complex():
    code, lines = cli("dl-complex", "--n", "5", "--d", "4", "--mod-m", "5")
    assert code == 0 and "j=5" in lines[-2]
    assert cli("dl-complex", "--n", "4", "--d", "3", "--mod-m", "4")[0] == 1


def test_verify_all_subset():
    code, lines = cli("verify-all", "--only", "1", "4", "9")
    assert code == 0 and len(lines) == 3 and all(ln.startswith("[PASS]") for ln in lines)


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "dlcohomology", "cohomology", "--n", "5", "--d", "4"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "N(3+2)" in out.stdout
